"""Cross-checks that tie the frequency-domain solver to independent routes.

None of these use tuned constants; each compares two computations that
should agree for structural reasons:

  * passivity: with both dispersive couplings off the system is a
    beamsplitter network, so every output quadrature sits exactly at the
    vacuum level 0.5;
  * the closed-form homodyne optimum against a bounded numerical search;
  * the integral of each intracavity spectrum against the stationary
    covariance from the Lyapunov equation (Parseval);
  * the defining relation and conjugation symmetry of the transfer matrix.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

import epsqueeze as ep
from epsqueeze.dynamics import MODE_INDEX
from epsqueeze.spectra import phase_parts


def main():
    params = ep.paper_preset("fig2a")
    system = ep.build_system(ep.operating_point(params), params)
    wb = params.omega_b

    passive = params.replace(g_ab=0.0, g_db=0.0, drive=ep.DriveAmplitude(0.0))
    psys = ep.build_system(ep.operating_point(passive), passive)
    rng = np.random.default_rng(11)
    worst = max(
        abs(ep.nsd_output(psys, rng.uniform(-2, 2) * wb, rng.uniform(0, math.pi)) - 0.5)
        for _ in range(50)
    )
    print(f"passivity: max |S - 0.5| = {worst:.2e} over 50 random points")

    omega = 0.906 * wb
    best = ep.optimal_phase(system, omega)
    search = minimize_scalar(
        lambda phi: ep.nsd_output(system, omega, phi),
        bounds=(0.0, math.pi), method="bounded", options={"xatol": 1e-12},
    )
    print(f"phase optimum at omega = 0.906 omega_b: closed form S_min = {best.S_min:.12f}, "
          f"numerical search {search.fun:.12f} (diff {abs(best.S_min - search.fun):.1e})")

    V = ep.lyapunov_covariance(system)
    cutoff = 200.0 * wb
    points = [0.0, 0.1 * wb, 0.99 * wb, wb, 1.01 * wb, 2 * wb, 10 * wb]
    print("Parseval check, spectrum integral vs Lyapunov variance:")
    for mode in "adb":
        i = MODE_INDEX[mode]
        P, Q, _ = phase_parts(system, np.array([wb]), mode=mode)
        phi = float(ep.optimum_from_parts(P, Q)[0][0])
        var = 0.5 * (
            np.exp(-2j * phi) * V[i, i] + V[i, i + 1]
            + V[i + 1, i] + np.exp(2j * phi) * V[i + 1, i + 1]
        ).real
        value, _ = quad(lambda w: ep.nsd_intracavity(system, w, phi, mode),
                        0.0, cutoff, points=points, limit=400)
        row = (np.exp(-1j * phi) * system.B[i] + np.exp(1j * phi) * system.B[i + 1])
        tail = 0.5 * (row @ system.Dn @ row).real
        integral = (2.0 * value + 2.0 * tail / cutoff) / (2.0 * math.pi)
        print(f"  mode {mode}: integral {integral:.9f} vs variance {var:.9f} "
              f"(rel {abs(integral - var) / var:.1e})")

    sigma_s, sigma_n = ep.pair_swap(3), ep.pair_swap(4)
    worst_def = worst_conj = 0.0
    for frac in (0.0, 0.37, 1.0, 1.9):
        omega = frac * wb
        T = ep.transfer(system, omega).matrix
        Tm = ep.transfer(system, -omega).matrix
        lhs = (-1j * omega * np.eye(6) - system.M) @ T
        worst_def = max(worst_def,
                        np.linalg.norm(lhs - system.B) / np.linalg.norm(system.B))
        worst_conj = max(worst_conj,
                         np.linalg.norm(Tm - sigma_s @ T.conj() @ sigma_n)
                         / np.linalg.norm(T))
    print(f"transfer matrix: defining-relation residual {worst_def:.1e}, "
          f"conjugation-symmetry residual {worst_conj:.1e}")


if __name__ == "__main__":
    main()
