"""
Two-factor basis, index-capped
==============================

The full computation (42 elements, largest index up to 9) takes a few minutes
over GF(2); run it with

    eqgb run --scenario two-factor --field 'GF(2)' --output-dir out

Here the S-pairs are capped at index span 6 so the demo finishes in seconds.
Pairs beyond the cap are deferred, not dropped: the state is incomplete and
could be resumed with a looser cap.
"""

from eqgb import Field, Limits, buchberger, interreduce
from eqgb.twofactor import KNOWN_SUMMARY, seed_minors, summarize

F = Field(2)
seeds = interreduce(seed_minors(F))
print(len(seeds), "interreduced seed minors")

state = buchberger(seeds, limits=Limits(max_largest_index=6))
print("complete:", state.complete, "| deferred pairs:", len(state.deferred))
print({k: v for k, v in state.stats.items() if v})

basis = interreduce(state.elements)
print(summarize(basis).table())

# the rows up to largest index 5 already agree with the full basis
full = {r.largest_index: r for r in KNOWN_SUMMARY.rows}
for r in summarize(basis).rows:
    if r.largest_index <= 5:
        print(f"li {r.largest_index}: {r.count} elements (full basis: {full[r.largest_index].count})")
