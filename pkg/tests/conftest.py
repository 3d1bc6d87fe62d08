import pytest

from pentaglobe.mesh import build_neighborhood_fragment, build_timezone_template


@pytest.fixture(scope="session")
def neighborhood():
    return build_neighborhood_fragment()


@pytest.fixture(scope="session", params=[1, 2, 3, 4, 5], ids=lambda d: "d{:d}".format(d))
def template(request):
    return build_timezone_template(request.param)
