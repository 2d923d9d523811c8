"""The upwind numerical flux for scalar advection."""

from __future__ import annotations

import numpy as np


def upwind_flux(a, b, vn):
    """Donor-cell flux vn+ * a + vn- * b through a face with normal speed vn.

    a is the inner (upwind-side) trace, b the outer trace. Consistent,
    conservative and monotone; returns exactly 0 at stagnation faces since
    both half speeds vanish. Works elementwise on arrays.
    """
    return np.maximum(vn, 0.0) * a + np.minimum(vn, 0.0) * b
