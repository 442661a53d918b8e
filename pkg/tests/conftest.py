import pytest

from ksphere import kernels
from ksphere.groups import GroupSpec, LambdaSpec, build_group, build_sign_hom


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # JIT-compile (or no-op on the numpy backend) before any timed test runs.
    kernels.warmup()


def group_with_lambda(spec: GroupSpec, convention: str):
    table = build_group(spec)
    lam = build_sign_hom(table, spec, LambdaSpec(convention=convention))
    return table, lam
