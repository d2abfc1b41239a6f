# %% [markdown]
# # Unit roots and cointegration, by simulation
#
# How often does the ADF test reject on a stationary AR(1), and how often
# on a random walk?  Same question for Engle-Granger on a cointegrated pair
# versus two unrelated walks.

# %%
from latencylab.econometrics import Ar1Config, adf_test, engle_granger, gen_ar1, gen_cointegrated_pair

seeds = range(100)
power = sum(adf_test(gen_ar1(Ar1Config(0.2, 500, seed=s))).reject_at_5pct for s in seeds)
size = sum(adf_test(gen_ar1(Ar1Config(1.0, 500, seed=s))).reject_at_5pct for s in seeds)
print(f"ADF, T=500: AR(0.2) rejected {power}/100, random walk rejected {size}/100")

# %%
coint = sum(engle_granger(*gen_cointegrated_pair(1.0, 0.5, 1250, s)).reject_at_5pct for s in seeds)
spurious = sum(
    engle_granger(gen_ar1(Ar1Config(1.0, 1250, seed=2 * s + 1000)), gen_ar1(Ar1Config(1.0, 1250, seed=2 * s + 1001))).reject_at_5pct
    for s in seeds
)
print(f"Engle-Granger, T=1250: cointegrated rejected {coint}/100, independent walks rejected {spurious}/100")

# %% [markdown]
# One concrete regression, with the lag order AIC picked.

# %%
r = adf_test(gen_ar1(Ar1Config(0.9, 300, seed=4)))
print(f"t={r.t_stat:.3f} lags={r.lags_used} nobs={r.nobs}")
for level, cv in r.critical_values.items():
    print(f"  {level:>3}: {cv:.3f} -> {'reject' if r.decision_at[level] else 'accept'}")
