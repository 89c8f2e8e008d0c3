import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from photon_subsets.errors import NonHermitianState, NonUnitary
from photon_subsets.fock import BeamState
from photon_subsets.io import (
    StateFormatError,
    dumps,
    load_state,
    load_unitary,
    loads,
    save_state,
    unitary_to_dict,
)
from photon_subsets.linear_optics import ModeUnitary
from photon_subsets.random_states import random_state


@given(st.integers(1, 3), st.integers(0, 3), st.sampled_from(["pure", "mixed", "cross-coherent"]), st.integers(0, 10**6))
def test_round_trip_is_bit_exact(d, n_max, kind, seed):
    rho = random_state(d, n_max, kind, seed)
    text = dumps(rho)
    back = loads(text)
    assert back == rho
    assert [t.ket for t in back.terms()] == [t.ket for t in rho.terms()]
    assert dumps(back) == text


def test_metadata_is_ignored_on_load(tmp_path):
    path = tmp_path / "s.json"
    save_state(BeamState.basis((1, 0)), path, metadata={"removed": 1})
    doc = json.loads(path.read_text())
    assert doc["metadata"] == {"removed": 1}
    assert load_state(path) == BeamState.basis((1, 0))


def test_load_validation():
    with pytest.raises(StateFormatError):
        loads('{"terms": []}')
    with pytest.raises(StateFormatError):
        loads('{"modes": 1, "terms": [{"ket": [1]}]}')
    skew = '{"modes": 1, "terms": [{"ket": [1], "bra": [0], "re": 1.0, "im": 0.0}]}'
    with pytest.raises(NonHermitianState):
        loads(skew)
    assert len(loads(skew, check_hermitian=False)) == 1
    assert len(loads(skew, tol=2.0)) == 1


def test_tolerance_from_environment(monkeypatch):
    slightly = '{"modes": 1, "terms": [{"ket": [1], "bra": [0], "re": 1e-9}, {"ket": [0], "bra": [1], "re": 0.0}]}'
    with pytest.raises(NonHermitianState):
        loads(slightly)
    monkeypatch.setenv("PHOTON_SUBSET_TOL", "1e-6")
    assert len(loads(slightly)) == 1


def test_unitary_documents(tmp_path):
    u = ModeUnitary.random(3, 0)
    path = tmp_path / "u.json"
    path.write_text(json.dumps(unitary_to_dict(u)))
    assert np.array_equal(load_unitary(path).entries, u.entries)
    path.write_text(json.dumps({"re": [[1, 0], [0, 1]]}))
    assert np.array_equal(load_unitary(path).entries, np.eye(2))
    path.write_text(json.dumps({"re": [[1, 1], [0, 1]]}))
    with pytest.raises(NonUnitary):
        load_unitary(path)
    path.write_text(json.dumps({"im": [[1]]}))
    with pytest.raises(StateFormatError):
        load_unitary(path)
