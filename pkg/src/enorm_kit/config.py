"""Central tolerance configuration.

One frozen record holds every numeric knob so tests calibrate in a single
place.  All tolerances are absolute unless the name says otherwise; matrix
checks scale them by ``max(1, ||input||_F)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    tol_eig: float = 1e-10      # reconstruction error of decompositions
    psd_tol: float = 1e-9       # eigenvalues above -psd_tol count as nonnegative
    herm_tol: float = 1e-9      # allowed ||M - M*||_F before symmetrizing
    gap_tol: float = 1e-8       # accepted primal-dual gap of the norm solver
    feas_tol: float = 1e-10     # slack allowed on <phi|G|phi> <= E for witnesses
    lambda_rel_tol: float = 1e-12   # relative width of the final multiplier bracket
    cluster_tol: float = 1e-7   # relative width of the top eigenvalue cluster
    transform_tol: float = 1e-6     # agreement of the two norm-transform routes
    concavity_tol: float = 1e-8     # slack on midpoint concavity checks
    seesaw_tol: float = 1e-6    # certified bracket width of channel distances
    check_tol: float = 1e-8     # slack beyond which an inequality check fails

    def with_(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT_TOLS = Tolerances()
