"""
Property battery over a random corpus
=====================================

Runs all lemma, chain and bound checks on seeded random matrices and
prints the tightest margins seen.
"""

from adfischer.cli import cmd_corpus

report = cmd_corpus(100, seed=3)
s = report.summary
print(f"{s['passed']}/{s['total']} partitions pass every proven check, max rho {s['max_rho']:.4f}")

# %%
# The five tightest steps across the corpus. The classical Fischer bound
# (ratio <= 1) is reported too; it is expected to go negative here.
tight = sorted(s["margins"].items(), key=lambda kv: kv[1]["min"])[:5]
for name, m in tight:
    print(f"{m['min']: .2e} (median {m['median']:.2e})  {name}")
