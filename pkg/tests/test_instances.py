"""Instance documents: parsing, validation, serialization round-trips."""

import json

import numpy as np
import pytest

from liquidpower import (
    DimensionMismatch,
    EmptyProfile,
    EpsilonOutOfRange,
    Instance,
    NotNormalized,
    ValidationError,
    instance_doc,
    load_instance,
    parse_instance,
    save_instance,
)

MINIMAL = {
    "n": 2,
    "profiles": [[0.0, 1.0], [0.0, 1.0]],
}


def full_doc():
    return {
        "n": 3,
        "profiles": [
            [0.5, 0.5, 0.0],
            [0.0, 1.0, 0.0],
            [0.25, 0.25, 0.5],
        ],
        "f": [1.0, 2.0, 3.0],
        "epsilon": 0.2,
        "preferences": [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, -1.0],
        ],
        "neighborhoods": [[1, 2], [2], [1, 2, 3]],
    }


class TestParse:
    def test_minimal_defaults(self):
        inst = parse_instance(MINIMAL)
        assert inst.n == 2
        assert inst.f.f.tolist() == [1.0, 1.0, 0.0]
        assert inst.epsilon is None
        assert inst.preferences is None
        assert inst.space is None

    def test_rows_become_columns(self):
        inst = parse_instance(MINIMAL)
        # row 0 of the file is agent 0's profile, column 0 of the matrix
        assert inst.matrix.entries[:, 0].tolist() == [0.0, 1.0]
        assert inst.matrix.entries[:, 1].tolist() == [0.0, 1.0]

    def test_full_document(self):
        inst = parse_instance(full_doc())
        assert inst.epsilon == 0.2
        assert inst.f.f.tolist() == [1.0, 2.0, 3.0, 0.0]
        assert inst.preferences.w.shape == (3, 4)
        assert inst.space.allowed(0) == frozenset({0, 1})
        assert inst.space.allowed(1) == frozenset({1})
        assert inst.space.allowed(2) == frozenset({0, 1, 2})

    def test_unknown_keys_ignored(self):
        doc = dict(MINIMAL, suite="conservation", trial=17, note="replay context")
        inst = parse_instance(doc)
        assert inst.n == 2

    @pytest.mark.parametrize("doc,err", [
        ([1, 2], ValidationError),
        ({}, ValidationError),
        ({"n": 2}, ValidationError),
        ({"n": 0, "profiles": []}, EmptyProfile),
        ({"n": -3, "profiles": []}, EmptyProfile),
        ({"n": "2", "profiles": [[0, 1], [0, 1]]}, EmptyProfile),
        ({"n": 2, "profiles": [[1.0, 0.0]]}, DimensionMismatch),
        ({"n": 2, "profiles": [[0.9, 0.0], [0.0, 1.0]]}, NotNormalized),
        (dict(MINIMAL, f=[1.0, 1.0, 0.0, 0.0]), DimensionMismatch),
        (dict(MINIMAL, f="junk"), DimensionMismatch),
        (dict(MINIMAL, epsilon=0.0), EpsilonOutOfRange),
        (dict(MINIMAL, epsilon=1.5), EpsilonOutOfRange),
        (dict(MINIMAL, preferences=[[1.0, 0.0], [0.0, 1.0]]), DimensionMismatch),
        (dict(MINIMAL, neighborhoods=[[1]]), DimensionMismatch),
        (dict(MINIMAL, neighborhoods=[[0], [1]]), DimensionMismatch),
        (dict(MINIMAL, neighborhoods=[[3], [1]]), DimensionMismatch),
        (dict(MINIMAL, neighborhoods=[[1.5], [1]]), DimensionMismatch),
    ])
    def test_rejects_malformed_documents(self, doc, err):
        with pytest.raises(err):
            parse_instance(doc)


class TestFiles:
    def test_round_trip_is_bitwise(self, tmp_path):
        inst = parse_instance(full_doc())
        path = tmp_path / "instance.json"
        save_instance(path, inst)
        back = load_instance(path)
        assert np.array_equal(back.matrix.entries, inst.matrix.entries)
        assert np.array_equal(back.f.f, inst.f.f)
        assert back.epsilon == inst.epsilon
        assert np.array_equal(back.preferences.w, inst.preferences.w)
        assert back.space == inst.space

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValidationError, match="cannot read"):
            load_instance(tmp_path / "absent.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValidationError, match="not valid JSON"):
            load_instance(path)

    def test_extra_keys_survive_serialization(self):
        inst = parse_instance(MINIMAL)
        doc = instance_doc(inst.matrix, suite="limit", trial=4)
        assert doc["suite"] == "limit"
        assert doc["trial"] == 4
        assert json.dumps(doc)

    def test_doc_profiles_are_agent_major(self):
        inst = parse_instance(full_doc())
        doc = instance_doc(inst.matrix)
        assert doc["profiles"] == inst.matrix.entries.T.tolist()

    def test_neighborhoods_serialize_one_based(self):
        inst = parse_instance(full_doc())
        doc = instance_doc(inst.matrix, space=inst.space)
        assert doc["neighborhoods"] == [[1, 2], [2], [1, 2, 3]]
