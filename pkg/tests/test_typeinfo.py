"""Tests for TypeInfo ingestion and the fixed-point registration pipeline."""

import json
import random
from pathlib import Path

import pytest

from typeseed.errors import IngestError
from typeseed.generation import generate_value, is_member
from typeseed.registry import init_types, parse_type_expression
from typeseed.rng import seed_state
from typeseed.typeinfo import (
    FunctionSignature,
    TypeInfo,
    extract_appropriate_functions,
    load_type_info,
    parse_type_info,
    register_types_fixed_point,
    types_of,
)

FIXTURES = Path(__file__).parent / "fixtures"


def sig(name, params, ret):
    return FunctionSignature(
        name,
        tuple((p, parse_type_expression(t)) for p, t in params),
        parse_type_expression(ret),
    )


class TestTypesOf:
    def test_nested_expressions_included(self):
        f = sig(
            "classtest.use_a",
            [("a", "classtest.testclassa")],
            "fixedtuple[float,list[int]]",
        )
        assert {str(t) for t in types_of(f)} == {
            "classtest.testclassa",
            "fixedtuple[float,list[int]]",
            "float",
            "list[int]",
            "int",
        }

    def test_return_only(self):
        f = sig("f", [], "nonetype")
        assert {str(t) for t in types_of(f)} == {"nonetype"}

    def test_set_semantics_deduplicate(self):
        f = sig("f", [("x", "int"), ("y", "int")], "int")
        assert {str(t) for t in types_of(f)} == {"int"}


class TestLoadTypeInfo:
    def test_fixture_loads(self):
        info = load_type_info(FIXTURES / "classtest_typeinfo.json")
        assert len(info.classes) == 2
        assert len(info.functions) == 2

    def test_empty_object(self):
        info = parse_type_info({})
        assert info == TypeInfo()

    def test_malformed_type_names_declarer(self, tmp_path):
        doc = {
            "classes": [],
            "functions": [
                {
                    "qualified_name": "m.broken",
                    "params": [{"name": "x", "type": "list["}],
                    "return": "int",
                }
            ],
        }
        path = tmp_path / "broken.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(IngestError) as err:
            load_type_info(path)
        assert "m.broken" in str(err.value)
        assert "$.functions[0].params[0].type" in str(err.value)

    def test_duplicate_param_names(self):
        doc = {
            "functions": [
                {
                    "qualified_name": "m.f",
                    "params": [
                        {"name": "x", "type": "int"},
                        {"name": "x", "type": "str"},
                    ],
                    "return": "int",
                }
            ]
        }
        with pytest.raises(IngestError):
            parse_type_info(doc)

    def test_schema_violations_carry_paths(self):
        with pytest.raises(IngestError) as err:
            parse_type_info({"classes": [{"qualified_name": ""}]})
        assert "$.classes[0]" in str(err.value)
        with pytest.raises(IngestError):
            parse_type_info({"classes": "nope"})
        with pytest.raises(IngestError):
            parse_type_info([])


class TestFixedPoint:
    def load(self):
        return load_type_info(FIXTURES / "classtest_typeinfo.json")

    def test_classtest_fixture_admits_both_classes(self):
        reg = init_types()
        report = register_types_fixed_point(reg, self.load())
        assert report.admitted == [
            "classtest.testclassa",
            "classtest.testclassb",
        ]
        assert report.fixed_point_reached
        assert report.iterations_used <= 3
        assert report.rejected == []

    def test_unknown_attribute_type_rejected(self):
        info = parse_type_info(
            {
                "classes": [
                    {
                        "qualified_name": "m.odd",
                        "fields": [{"name": "w", "type": "weirdtype"}],
                        "methods": [],
                    }
                ],
                "functions": [],
            }
        )
        reg = init_types()
        report = register_types_fixed_point(reg, info)
        assert report.admitted == []
        assert report.rejected == [("m.odd", ["weirdtype"])]

    def test_empty_class_set(self):
        reg = init_types()
        report = register_types_fixed_point(reg, TypeInfo())
        assert report.admitted == []
        assert report.iterations_used == 1
        assert report.fixed_point_reached

    def test_method_types_gate_admission(self):
        info = parse_type_info(
            {
                "classes": [
                    {
                        "qualified_name": "m.c",
                        "fields": [{"name": "x", "type": "int"}],
                        "methods": [
                            {
                                "qualified_name": "m.c.helper",
                                "params": [{"name": "cb", "type": "callable[...]"}],
                                "return": "nonetype",
                            }
                        ],
                    }
                ],
                "functions": [],
            }
        )
        reg = init_types()
        report = register_types_fixed_point(reg, info)
        assert report.admitted == []
        assert report.rejected[0][0] == "m.c"
        assert "callable[...]" in report.rejected[0][1]

    def test_self_referential_class_never_admitted(self):
        info = parse_type_info(
            {
                "classes": [
                    {
                        "qualified_name": "m.node",
                        "fields": [{"name": "next", "type": "m.node"}],
                        "methods": [],
                    }
                ],
                "functions": [],
            }
        )
        reg = init_types()
        report = register_types_fixed_point(reg, info)
        assert report.admitted == []
        assert report.rejected[0][0] == "m.node"

    def test_iteration_budget_respected(self):
        # A four-deep dependency chain needs four passes without in-pass
        # propagation; with it, admission order still respects dependencies.
        chain = {
            "classes": [
                {
                    "qualified_name": f"m.c{i}",
                    "fields": [
                        {"name": "x", "type": f"m.c{i - 1}" if i else "int"}
                    ],
                    "methods": [],
                }
                # Reverse order so each pass can admit at most one class
                # unless in-pass propagation helps.
                for i in (3, 2, 1, 0)
            ],
            "functions": [],
        }
        info = parse_type_info(chain)
        reg = init_types()
        report = register_types_fixed_point(reg, info, max_iters=2)
        assert not report.fixed_point_reached or len(report.admitted) == 4
        assert report.iterations_used <= 2

    def test_monotonic_and_order_independent(self):
        base = self.load()
        rng = random.Random(7)
        final_sets = set()
        for _ in range(6):
            classes = list(base.classes)
            rng.shuffle(classes)
            reg = init_types()
            report = register_types_fixed_point(
                reg, TypeInfo(tuple(classes), base.functions)
            )
            final_sets.add(frozenset(report.admitted))
        assert final_sets == {
            frozenset({"classtest.testclassa", "classtest.testclassb"})
        }


class TestAppropriateFunctions:
    def test_fixture_functions_all_appropriate(self):
        info = load_type_info(FIXTURES / "classtest_typeinfo.json")
        reg = init_types()
        register_types_fixed_point(reg, info)
        names = {f.qualified_name for f in extract_appropriate_functions(reg, info)}
        assert names == {"classtest.use_a", "classtest.use_b"}

    def test_unregistered_type_excludes_function(self):
        info = parse_type_info(
            {
                "functions": [
                    {
                        "qualified_name": "m.good",
                        "params": [{"name": "x", "type": "int"}],
                        "return": "int",
                    },
                    {
                        "qualified_name": "m.bad",
                        "params": [{"name": "cb", "type": "callable[...]"}],
                        "return": "int",
                    },
                ]
            }
        )
        reg = init_types()
        register_types_fixed_point(reg, info)
        names = {f.qualified_name for f in extract_appropriate_functions(reg, info)}
        assert names == {"m.good"}

    def test_empty_functions(self):
        reg = init_types()
        assert extract_appropriate_functions(reg, TypeInfo()) == set()

    def test_appropriate_functions_are_generatable(self):
        info = load_type_info(FIXTURES / "classtest_typeinfo.json")
        reg = init_types()
        register_types_fixed_point(reg, info)
        s = seed_state(1)
        for f in extract_appropriate_functions(reg, info):
            for _, ty in f.params:
                v, s = generate_value(reg, ty, s)
                assert is_member(reg, v, ty)
            v, s = generate_value(reg, f.return_type, s)
            assert is_member(reg, v, f.return_type)
