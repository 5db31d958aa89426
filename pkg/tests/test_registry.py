"""Tests for the type table, alias table, and type-expression parsing."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typeseed.errors import (
    AliasCycleError,
    ArityError,
    TypeSyntaxError,
    UnresolvedTypeError,
    UnsupportedRecursionError,
)
from typeseed.registry import (
    TypeExpression,
    TypeKind,
    init_types,
    parse_type_expression,
)


class TestParse:
    def test_simple_name(self):
        assert parse_type_expression("int") == TypeExpression("int")

    def test_one_argument(self):
        expr = parse_type_expression("list[int]")
        assert expr.head == "list"
        assert expr.args == (TypeExpression("int"),)

    def test_nested(self):
        expr = parse_type_expression("dictionary[str, list[float]]")
        assert expr.head == "dictionary"
        assert expr.args[0] == TypeExpression("str")
        assert expr.args[1] == TypeExpression("list", (TypeExpression("float"),))

    def test_whitespace_ignored(self):
        a = parse_type_expression(" fixedtuple[ int , float ] ")
        b = parse_type_expression("fixedtuple[int,float]")
        assert a == b

    def test_lowercased(self):
        assert parse_type_expression("LIST[Int]") == parse_type_expression("list[int]")

    def test_empty_argument_list_rejected(self):
        with pytest.raises(TypeSyntaxError):
            parse_type_expression("fixedtuple[]")

    @pytest.mark.parametrize("bad", ["", "[int]", "list[int", "list[int]]", "a,b", "list[]"])
    def test_syntax_errors(self, bad):
        with pytest.raises(TypeSyntaxError):
            parse_type_expression(bad)

    def test_error_carries_position(self):
        with pytest.raises(TypeSyntaxError) as err:
            parse_type_expression("list[int")
        assert err.value.position == 8

    @given(st.recursive(
        st.sampled_from(["int", "float", "str", "a.b-c", "x_1"]).map(TypeExpression),
        lambda children: st.builds(
            TypeExpression,
            st.sampled_from(["list", "dictionary", "fixedtuple"]),
            st.lists(children, min_size=1, max_size=3).map(tuple),
        ),
        max_leaves=8,
    ))
    @settings(max_examples=200)
    def test_parse_format_round_trip(self, expr):
        assert parse_type_expression(str(expr)) == expr


class TestInitTypes:
    def test_int_alias(self):
        reg = init_types()
        assert reg.resolve("int").name == "integer"

    def test_str_alias(self):
        reg = init_types()
        assert reg.resolve("str").name == "unicode-codepoint-string"
        assert reg.resolve("unicode").name == "unicode-codepoint-string"

    def test_boolean_alias(self):
        reg = init_types()
        assert reg.resolve("boolean").name == "bool"

    def test_nonetype_nonparametric(self):
        desc = init_types().resolve("nonetype")
        assert desc.kind is TypeKind.NONPARAMETRIC

    def test_base_parametrics_resolve(self):
        reg = init_types()
        reg.check_expression("list[int]")
        reg.check_expression("dictionary[str,int]")
        reg.check_expression("fixedtuple[int,float,str]")
        reg.check_expression("union[int,float]")

    def test_lookups_case_insensitive(self):
        reg = init_types()
        assert reg.resolve("FLOAT").name == "float"
        assert reg.resolve("Boolean").name == "bool"


class TestRegistration:
    def test_reregistration_overwrites(self):
        reg = init_types()
        reg.add_nonparametric_type("x", "int")
        reg.add_nonparametric_type("x", "float")
        assert reg.resolve("x").rule == "float"

    def test_alias_cycle_two(self):
        reg = init_types()
        reg.add_alias_type("a", "b")
        with pytest.raises(AliasCycleError):
            reg.add_alias_type("b", "a")

    def test_alias_cycle_three(self):
        reg = init_types()
        reg.add_alias_type("a", "b")
        reg.add_alias_type("b", "c")
        with pytest.raises(AliasCycleError) as err:
            reg.add_alias_type("c", "a")
        assert err.value.chain[0] == "c"
        assert "a" in err.value.chain

    def test_alias_self_rejected(self):
        reg = init_types()
        with pytest.raises(ValueError):
            reg.add_alias_type("x", "X")

    def test_alias_cannot_shadow_type(self):
        reg = init_types()
        with pytest.raises(ValueError):
            reg.add_alias_type("float", "integer")

    def test_union_needs_two_members(self):
        reg = init_types()
        with pytest.raises(ValueError):
            reg.register_union("solo", ["int"])

    def test_union_unknown_member(self):
        reg = init_types()
        with pytest.raises(UnresolvedTypeError):
            reg.register_union("broken", ["int", "nosuchtype"])

    def test_union_registers_and_resolves(self):
        reg = init_types()
        reg.register_union("intfloatstr", ["int", "float", "str"])
        desc = reg.resolve("intfloatstr")
        assert desc.kind is TypeKind.UNION
        assert len(desc.members) == 3

    def test_record_registration_order(self):
        reg = init_types()
        reg.register_record(
            "classtest.testclassa", [("a", "float"), ("b", "list[int]")]
        )
        reg.register_record(
            "classtest.testclassb", [("a", "int"), ("b", "classtest.testclassa")]
        )
        desc = reg.resolve("ClassTest.TestClassB")
        assert desc.kind is TypeKind.RECORD
        assert [name for name, _ in desc.fields] == ["a", "b"]

    def test_record_unknown_field_type(self):
        reg = init_types()
        with pytest.raises(UnresolvedTypeError):
            reg.register_record("m.c", [("x", "weirdtype")])

    def test_record_self_reference_rejected(self):
        reg = init_types()
        with pytest.raises(UnsupportedRecursionError):
            reg.register_record("m.c", [("x", "m.c")])
        with pytest.raises(UnsupportedRecursionError):
            reg.register_record("m.d", [("x", "list[m.d]")])

    def test_record_rewrite_with_same_fields_is_silent(self, caplog):
        reg = init_types()
        reg.register_record("m.c", [("x", "int")])
        with caplog.at_level("WARNING"):
            reg.register_record("m.c", [("x", "int")])
        assert not caplog.records

    def test_record_rewrite_with_new_fields_warns(self, caplog):
        reg = init_types()
        reg.register_record("m.c", [("x", "int")])
        with caplog.at_level("WARNING"):
            reg.register_record("m.c", [("x", "float")])
        assert any("re-registered" in r.message for r in caplog.records)


class TestResolve:
    def test_unknown_name(self):
        with pytest.raises(UnresolvedTypeError):
            init_types().resolve("nosuchtype")

    def test_arity_mismatch(self):
        reg = init_types()
        with pytest.raises(ArityError):
            reg.check_expression("list[int,int]")
        with pytest.raises(ArityError):
            reg.check_expression("integer[int]")
        with pytest.raises(ArityError):
            reg.check_expression("union[int]")

    def test_resolve_case_equivalence(self):
        reg = init_types()
        for name in ["int", "str", "boolean", "list", "nonetype"]:
            assert reg.resolve(name) is reg.resolve(name.upper())

    def test_closure_after_registrations(self):
        # Every expression reachable from any descriptor resolves.
        reg = init_types()
        reg.register_union("ifs", ["int", "float", "str"])
        reg.register_record("m.a", [("x", "list[ifs]")])
        reg.register_record("m.b", [("y", "m.a"), ("z", "dictionary[str,m.a]")])
        for desc in reg.descriptors():
            for member in desc.members:
                reg.check_expression(member)
            for _, fty in desc.fields:
                reg.check_expression(fty)
