"""Checking the conditional exceedance law behind the S2 closed form.

When Eve detects with perfect CSI but feeds back an MMSE estimate, her true
SNR conditioned on that estimate follows a noncentral chi-square law, so the
probability of her capacity beating the rate redundancy is a Marcum
Q-function.  The sampler never uses that law: it just adds the complex
Gaussian estimate and error.  Binning two million draws by the estimate and
comparing frequencies with the Marcum prediction closes the loop.
"""

from secure_onoff import RatePair, SystemConfig, validate_conditional_law_s2

cfg = SystemConfig(p_b=10.0, p_e=1.0, alpha=5.0)
rates = RatePair(r_b=2.0, r_s=1.0)

rep = validate_conditional_law_s2(cfg, rates, n_samples=2_000_000, n_bins=16, seed=7)

print(f"{'bin':>3} {'mean estimate':>14} {'samples':>9} "
      f"{'empirical':>10} {'predicted':>10} {'z':>6}")
for i in range(len(rep.n_per_bin)):
    print(f"{i:>3} {rep.bin_centers[i]:>14.4f} {rep.n_per_bin[i]:>9d} "
          f"{rep.empirical[i]:>10.5f} {rep.predicted[i]:>10.5f} {rep.z[i]:>+6.2f}")
print(f"\nlargest |z| over {len(rep.n_per_bin)} bins: {rep.max_abs_z:.2f} "
      "(3.0 would flag a mismatch)")
