"""The n log n law, read off the geometry — no algorithm in sight.

The reversed start sits at squared distance d0 = n(n^2-1)/3 from the
sorted vertex, exactly. Contraction needs t = 0.5*ln(d0) time to bring
the disorder under 1, and charging at least one comparison per 1/n of
continuous time turns that into n*t operations — which grows like
(3/2) n ln n. The ratio column converging to 1 is the whole story.
"""

import math

from permflow import lemma_lower_bound, reverse_disorder, time_to_epsilon

print(f"{'n':>8}  {'d0 = n(n^2-1)/3':>16}  {'t = ln(d0)/2':>12}  {'n*t':>12}  {'1.5 n ln n':>12}  {'ratio':>7}")
for n in [10, 100, 1000, 10**4, 10**5]:
    d0 = reverse_disorder(n)
    t = time_to_epsilon(float(d0), 1.0)
    bound = lemma_lower_bound(n, float(d0), 1.0, 1.0)
    asym = 1.5 * n * math.log(n)
    print(
        f"{n:>8}  {d0:>16}  {t:>12.4f}  {bound:>12.1f}  {asym:>12.1f}"
        f"  {bound / asym:>7.4f}"
    )

print()
print("exactness check for small n (independent summation):")
for n in range(1, 8):
    direct = sum((n + 1 - 2 * i) ** 2 for i in range(1, n + 1))
    print(f"   n={n}: sum of squared displacements {direct:>3}  formula {reverse_disorder(n):>3}")
