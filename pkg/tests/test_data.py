"""Initial-data catalog: shapes, masses, and name parsing."""

import math

import numpy as np
import pytest

from sigmadecay import CATALOG_NAMES, DomainError, UnknownDatum, catalog_lookup


def test_gaussian():
    d = catalog_lookup("gaussian")
    assert d.name == "gaussian"
    assert d.mass == 1.0
    r = np.array([0.0, 0.5, 2.0])
    assert np.allclose(d(r), np.exp(-(r**2)), rtol=1e-16)


def test_zero_mass():
    d = catalog_lookup("zero_mass")
    assert d.mass == 0.0
    assert d(np.array([0.0]))[0] == 0.0
    assert math.isclose(float(d(np.array([1.0]))[0]), math.exp(-1.0), rel_tol=1e-15)
    r = np.array([0.3, 1.7])
    assert np.allclose(d(r), r**2 * np.exp(-(r**2)), rtol=1e-16)


def test_zero():
    d = catalog_lookup("zero")
    assert d.mass == 0.0
    assert np.all(d(np.linspace(0, 5, 7)) == 0.0)


def test_dilated_gaussian():
    d = catalog_lookup("dilated_gaussian(4)")
    assert d.name == "dilated_gaussian(4)"
    assert d.mass == 1.0
    r = np.array([0.0, 0.5, 1.0])
    assert np.allclose(d(r), np.exp(-4 * r**2), rtol=1e-16)
    # float spellings normalize through %g
    assert catalog_lookup("dilated_gaussian(0.50)").name == "dilated_gaussian(0.5)"


@pytest.mark.parametrize("bad", ["dilated_gaussian(0)", "dilated_gaussian(-1)", "dilated_gaussian(inf)"])
def test_dilated_gaussian_rejects_bad_alpha(bad):
    with pytest.raises(DomainError):
        catalog_lookup(bad)


def test_dilated_gaussian_rejects_garbage_argument():
    with pytest.raises((DomainError, UnknownDatum, ValueError)):
        catalog_lookup("dilated_gaussian(two)")


def test_unknown_name_lists_catalog():
    with pytest.raises(UnknownDatum) as exc:
        catalog_lookup("bump")
    for name in CATALOG_NAMES:
        assert name in str(exc.value)


def test_scalar_call():
    d = catalog_lookup("gaussian")
    assert float(np.asarray(d(1.0))) == pytest.approx(math.exp(-1.0), rel=1e-15)
