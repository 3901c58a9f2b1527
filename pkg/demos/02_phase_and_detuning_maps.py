"""Density maps: squeezing versus homodyne angle and versus exciton detuning.

Two 2D sweeps around the reference point.  The first scans the homodyne
angle phi and shows the phase structure of the squeezing ellipse across
frequency.  The second scans the effective exciton detuning and exposes
the parametric instability at small detuning: those grid points are
masked, not extrapolated, and the script reports the unstable band.
"""

from pathlib import Path

import numpy as np

import epsqueeze as ep
from epsqueeze import io

OUT = Path(__file__).parent / "output"


def emit(name, result):
    io.write_csv(str(OUT / f"{name}.csv"), io.sweep_metadata(result),
                 io.sweep_columns(result))
    io.save_sweep_plot(str(OUT / f"{name}.svg"), result)
    print(f"wrote {OUT / name}.csv and .svg")


def main():
    OUT.mkdir(exist_ok=True)

    phase_map = ep.run_sweep(ep.figure_preset("fig2b"))
    db = phase_map.values
    print("phase map (omega x phi):")
    print(f"  best {np.nanmax(db):.2f} dB, worst {np.nanmin(db):.2f} dB over "
          f"{db.size} points, all stable: {phase_map.stable_mask.all()}")
    emit("phase_map", phase_map)

    detuning_map = ep.run_sweep(ep.figure_preset("fig2d"))
    spec = detuning_map.spec
    wb = spec.base.omega_b
    delta = detuning_map.coords[1] / wb
    unstable_cols = ~detuning_map.stable_mask.all(axis=0)
    print("\ndetuning map (omega x delta_d):")
    if unstable_cols.any():
        lo, hi = delta[unstable_cols].min(), delta[unstable_cols].max()
        print(f"  unstable for delta_d/omega_b in [{lo:.3f}, {hi:.3f}] "
              f"({int(unstable_cols.sum())} of {delta.size} columns)")
    stable_best = np.nanmax(detuning_map.values)
    print(f"  best squeezing on the stable region: {stable_best:.2f} dB")
    emit("detuning_map", detuning_map)


if __name__ == "__main__":
    main()
