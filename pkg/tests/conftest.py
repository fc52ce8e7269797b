import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    "test_c01_expulsion_law": "C1 expulsion law |e^(2 eps theta) - 1| (rel 1e-12)",
    "test_c02_infinitesimal_membership": "C2 infinitesimal membership (<= 3 eps theta)",
    "test_c03_closure": "C3 closure (1e-12)",
    "test_c04_unitarity_and_jacobi": "C4 unitarity and Jacobi identity (1e-12)",
    "test_c05_diffeomorphism_bijectivity": "C5 circle-spiral bijectivity (rel 1e-9)",
    "test_c06_irreversibility_census": "C6 irreversibility census",
    "test_c07_lift_reversibility": "C7 lift reversibility (1e-12)",
    "test_c08_jacobian_correctness": "C8 Jacobian correctness (1e-6, 1e-8)",
    "test_c09_classification_table": "C9 classification table",
    "test_c10_report_integrity": "C10 report integrity",
}


def pytest_terminal_summary(terminalreporter):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            name = rep.nodeid.rsplit("::", 1)[-1]
            if "test_acceptance.py" in rep.nodeid and name in CRITERIA:
                if rep.when == "call" or status != "passed":
                    outcomes[name] = "PASS" if status == "passed" else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        if name in outcomes:
            terminalreporter.write_line(f"{outcomes[name]:4}  {label}")
