import numpy as np
import pytest

from sobeig import derivatives, families


@pytest.fixture(scope="session", autouse=True)
def warm_compiled_kernels():
    """Trigger the JIT once so timed tests measure math, not compilation."""
    derivatives.stream_deriv_kernel(families.laguerre(0.0), 0.0, 1, 16)
    derivatives.build_derivative_table(families.hermite(), 0.0, 2, 16)
    from sobeig._kernels import comp_cumsum

    comp_cumsum(np.ones(4))
