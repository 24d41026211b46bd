"""Periodic-orbit census for the basilica polynomial z^2 - 1.

Direct coefficient expansion of f^n(z) - z overflows doubles long before
the degree cap, so roots are found by running Aberth-Ehrlich on a
black-box evaluation of the iterate. The census checks the root count
against degree^n + 1 (infinity included) and reports parabolic suspects.
"""

from holoscope import periodic_point_census, periodic_points, polynomial_map

f = polynomial_map([-1.0, 0.0, 1.0])

for n in (1, 2, 3, 4, 6):
    cycles = periodic_points(f, n)
    census = periodic_point_census(f, n)
    print(f"period {n}: expected {census.expected_total} points "
          f"(found {census.found_with_multiplicity} finite + "
          f"{census.infinity_multiplicity} at infinity), "
          f"{len(cycles)} primitive cycles")
    for c in cycles[:4]:
        where = ", ".join("inf" if p.is_infinity else f"{p.to_complex():.4f}"
                          for p in c.points)
        print(f"    {c.kind:16s} |lambda| = {abs(c.multiplier):9.4f}  [{where}]")
    if len(cycles) > 4:
        print(f"    ... and {len(cycles) - 4} more")

# the superattracting 2-cycle 0 <-> -1 is the basilica's namesake
two = [c for c in periodic_points(f, 2) if abs(c.multiplier) < 1e-9]
print("\nsuperattracting 2-cycle:",
      [str(p.to_complex()) for p in two[0].points])
