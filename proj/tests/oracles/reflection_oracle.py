# Independent high-precision evaluation of the cavity reflection amplitudes and
# the spectrally averaged efficiency. Used to freeze expected values in tests.
import mpmath as mp

mp.mp.dps = 40


def refl(g, kappa, kappa_s, gamma, omega_c, omega_x, omega):
    g, kappa, kappa_s, gamma = map(mp.mpf, (g, kappa, kappa_s, gamma))
    omega_c, omega_x, omega = map(mp.mpf, (omega_c, omega_x, omega))
    den = 1j * (omega_c - omega) + kappa / 2 + kappa_s / 2
    f = 1j * (omega_x - omega) + gamma / 2
    r0 = 1 - kappa / den
    r1 = 1 - kappa * f / (den * f + g**2)
    return r0, r1


def avg_eta(g, kappa, kappa_s, gamma, sigma, n):
    def integrand(w):
        r0, r1 = refl(g, kappa, kappa_s, gamma, 0, 0, w)
        dens = mp.exp(-(w / sigma) ** 2) / (mp.sqrt(mp.pi) * sigma)
        return dens * abs((r1 - r0) / 2) ** (2 * n)
    return mp.quad(integrand, [-mp.inf, -5 * sigma, 0, 5 * sigma, mp.inf])


if __name__ == "__main__":
    r0, r1 = refl(30, 90, 30, 0.3, 0, 0, 0)
    print("r0", mp.nstr(r0, 20), "r1", mp.nstr(r1, 20))
    print("eta1", mp.nstr(abs((r1 - r0) / 2) ** 2, 20))
    print("p2", mp.nstr(abs((r1 + r0) / 2) ** 2, 20))
    r0, r1 = refl(30, 270, 30, 0.3, 0, 0, 0.25)
    print("detuned k=9ks w=0.25 r0", mp.nstr(r0, 20), "r1", mp.nstr(r1, 20))
    for (k, s, n) in [(90, 0.3, 2), (90, 0.3, 3), (570, 0.3, 2), (570, 0.3, 3)]:
        print("avg kappa", k, "sigma", s, "n", n, mp.nstr(avg_eta(30, k, 30, 0.3, s, n), 16))
    for n in [2, 3, 4, 5, 6, 7, 8, 20]:
        print("table1 n", n, mp.nstr(avg_eta(30, 270, 30, 0.3, 0.6, n), 16))
