import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from model import atom_decay_model, excited_projector, validate_density  # noqa: E402

@pytest.fixture
def atom():
    return atom_decay_model(1.0)

@pytest.fixture
def excited():
    return validate_density(excited_projector())

@pytest.fixture
def rng():
    return np.random.default_rng(1234)

@pytest.fixture
def write_json(tmp_path):
    """Grava um dicionário como JSON em tmp_path e devolve o caminho."""
    import json

    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return _write
