"""Recompute F and adjusted R² of every embedded model from its R² and df.

Prints one line per model with the stored and recomputed values and the
gaps, plus any coefficients whose beta and standardized beta disagree in
sign.
"""

from pavemetrics.registry import all_models


def main() -> None:
    print(f"{'model':<10} {'R2':>6} {'df':>8} {'F':>8} {'F calc':>8} {'gap':>7} {'adjR2':>6} {'calc':>8}")
    for m in all_models():
        f = m.f_from_r_squared()
        adj = m.adj_r_squared_from_r_squared()
        gap = (f - m.f_stat) / m.f_stat
        name = f"{m.indicator.value} {m.pavement_type.value}"
        print(f"{name:<10} {m.r_squared:6.3f} {f'({m.df1},{m.df2})':>8} {m.f_stat:8.3f} {f:8.3f} "
              f"{gap:+7.2%} {m.adj_r_squared:6.3f} {adj:8.5f}")
    for m in all_models():
        for note in m.notes:
            print(f"note {m.indicator.value} {m.pavement_type.value}: {note}")


if __name__ == "__main__":
    main()
