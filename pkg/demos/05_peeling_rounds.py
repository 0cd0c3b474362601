"""Peeling one color class and watching the discrepancy.

At desk scale the discrepancy exit fires immediately, so the demo raises the
exit thresholds with threshold_scale to let the round machinery run.
"""
from emptymono import generate
from emptymono.pipelines import peel_dichotomy_2color, peel_dichotomy_kcolor

S = generate("random-ball", 30, 3, 3, seed=5).colored()
for scale in (1, 100):
    out = peel_dichotomy_kcolor(S, 0, scale)
    print(f"k=3 d=3 n=30 scale {scale:>4}: {out.kind.value:<10} trigger {out.trigger or '-':<4} "
          f"rounds {len(out.rounds)} regime {'met' if out.asymptotic else 'unmet'}")
    for r in out.rounds:
        if "survivors" in r:
            print(f"    round {r['round']}: |S_i|={r['size']} |R_i|={r['R']} survivors {r['survivors']} "
                  f"sound {r['sound']}")

S = generate("random-ball", 60, 2, 2, seed=6).colored()
out = peel_dichotomy_2color(S, None, 1000)
print(f"\nk=2 d=2 n=60 scale 1000: {out.kind.value} after {len(out.rounds)} rounds")
for r in out.rounds[:6]:
    print("   ", {k: r[k] for k in ("round", "size", "rich", "third") if k in r})
