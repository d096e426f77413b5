"""Print the q=0.5 comparison table and its deviation from the reference values."""

from skewinfo.report import format_table1, table1_rows
from skewinfo.scenario import load_scenario

REFERENCE = {
    "pi/6": (0.133979, 0.204181, 0.127677, 0.208898, 0.20891, 0.208947),
    "pi/4": (0.194803, 0.264726, 0.182753, 0.271447, 0.271447, 0.271447),
    "pi/2": (0.342466, 0.383224, 0.324177, 0.393068, 0.393913, 0.396447),
}
COLUMNS = ("lbbar1", "lbbar2", "lb1", "lb2", "lb3", "sum")


def main():
    results = table1_rows(load_scenario("table1"))
    print(format_table1(results))
    worst = max(
        abs(getattr(rep, c) - want)
        for label, rep in results
        for c, want in zip(COLUMNS, REFERENCE[label])
    )
    print(f"\nmax |computed - reference| = {worst:.2e}")


if __name__ == "__main__":
    main()
