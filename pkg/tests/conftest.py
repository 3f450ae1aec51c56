import pytest

from bogocert.certifier import curve_from_model, make_L
from bogocert.elliptic import CurveModel
from bogocert.numfield import NumberFieldOrder


@pytest.fixture(scope="session")
def gaussian():
    return NumberFieldOrder((1, 0, 1))


@pytest.fixture(scope="session")
def qi_model(gaussian):
    # i y^2 = x^3 + (i-2) x^2 + x under x = -i X, y = Y becomes
    # Y^2 = X^3 + (-1-2i) X^2 - X
    i = gaussian.generator
    return CurveModel(gaussian, (0, -1 - 2 * i, 0, -1, 0))


@pytest.fixture(scope="session")
def qi_curve(qi_model):
    return curve_from_model(qi_model)


@pytest.fixture(scope="session")
def x11():
    return curve_from_model(CurveModel.over_q(0, -1, 1, -10, -20))


@pytest.fixture(scope="session")
def cm1728():
    return curve_from_model(CurveModel.over_q(0, 0, 0, 1, 0))


@pytest.fixture(scope="session")
def x11_certs(x11):
    from bogocert.certifier import search_supersingular

    return search_supersingular(x11, make_L(x11.K_E), 2000)

