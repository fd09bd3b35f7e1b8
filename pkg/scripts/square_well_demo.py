"""Square-well designs: predicted vs computed eigenvalue for a few eps."""

from indefspec.suites import square_well_eigenvalue
from indefspec.potentials import square_well

for eps in (0.05, 0.02, 0.01):
    d = square_well(eps, 1.0)
    lam = square_well_eigenvalue(d)
    print(f"eps={eps:<5} R={d.R:9.4f}  C={d.rouche_C:4g}  lam={lam:.10f}  "
          f"|lam-pred|={abs(lam - d.lam_pred):.2e}  Im/eps={lam.imag / eps:.4f}")
