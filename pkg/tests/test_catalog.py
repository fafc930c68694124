import pytest

from polymodels.algebra import MultiPoly
from polymodels.catalog import UnknownInvariant, UnknownModel, build_invariant, model
from polymodels.catalog.export import model_to_json
from polymodels.catalog.models import BUILDERS, GROUP_LABELS, PARAMETRISED, TYPO
from polymodels.modelcheck.report import catalog_entries


def test_name_normalisation():
    assert model("Omega_1", 3).key == model("1", 3).key == "omega1"
    assert model("Ω11").key == "omega11"


def test_unknown_model():
    with pytest.raises(UnknownModel):
        model("omega99")


def test_parametrised_models_need_n():
    with pytest.raises(ValueError):
        model("omega1")


def test_invariant_lookup():
    assert build_invariant("X_3") == build_invariant("Xn", n=3)
    with pytest.raises(UnknownInvariant):
        build_invariant("W7")


def test_group_labels_cover_catalog():
    assert set(GROUP_LABELS) == set(BUILDERS)
    assert set(PARAMETRISED) <= set(BUILDERS)


def test_catalog_order():
    entries = catalog_entries()
    assert entries[0] == ("omega1", 2)
    assert len(entries) == 3 * len(PARAMETRISED) + len(BUILDERS) - len(PARAMETRISED)


@pytest.mark.parametrize("key,n", catalog_entries((3,)))
def test_model_consistency(key, n):
    m = model(key, n)
    assert m.cometric.dimension == m.dim
    for i in range(m.dim):
        for j in range(m.dim):
            assert m.cometric[i, j] == m.cometric[j, i]
    names = {b.name for b in m.boundary}
    assert set(m.det_exponents) <= names
    for b in m.boundary:
        if b.status == TYPO:
            assert b.printed is not None or b.printed_poly is not None
    assert m.domain_conditions, "sampling needs sign conditions"
    data = model_to_json(m)
    assert data["kind"] == "model" and data["model"] == key


def test_secondary_coordinate_has_syzygy():
    for key, n in catalog_entries((3,)):
        m = model(key, n)
        if m.system.secondary is not None:
            assert m.syzygy is not None
            assert m.syzygy.degree(m.system.secondary) == 2


def test_typo_records_present():
    assert any(t.location for t in model("omega14").typos)
    assert not model("omega1", 3).typos
    assert isinstance(model("omega11").boundary[0].poly, MultiPoly)
