"""
Running the verification suites
===============================

The same suites the ``fermiwig verify`` command runs, driven from
Python.  The report is a plain dictionary and can be written as JSON.
"""

from fermiwig.scenario import Scenario, run_scenario

# two k-points with two spins, a handful of suites
config = Scenario(k_points=2, spins=2, suites=["car", "bogoliubov", "eigenstates", "sifting"],
                  seed=1, workers=1)
report = run_scenario(config)
print("\n".join(report.lines()[:8]))
print("...")
print(report.summary())

# the delta-type overlaps need the Laurent ring in the regulator
deltas = run_scenario(Scenario(ring="laurent-eps", suites=["delta-overlaps"], workers=1))
print("delta overlaps:", deltas.summary(), deltas.notes.get("delta-overlaps", {}))
