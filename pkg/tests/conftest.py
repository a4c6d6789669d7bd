import pytest

from sbgrs import kernels

BACKENDS = ["python"] + (["cython"] if kernels.HAVE_COMPILED else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    with kernels.backend_set(request.param):
        yield request.param
