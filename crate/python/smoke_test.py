"""Quick check that the extension module loads and agrees with known values."""

import math

import lrk_qfi as lq


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def main():
    flat = lq.DecayKernel.power(0.0)
    chain = lq.Chain(4, flat, j=0.0, mu=0.0, delta=1.0)
    assert close(chain.qfi("delta", 1.0), 8.0), chain.qfi("delta", 1.0)
    assert close(chain.exact_qfi("delta", 1.0), 8.0)

    # Flat kernel: f(k) = cot(k/2).
    n = 64
    for k, f in zip(lq.momenta(n), lq.structure_factors(n, flat)):
        assert close(f, 1.0 / math.tan(k / 2), 1e-12)

    mu = [lq.Chain(n, flat).qfi_optimal("mu", 1.0) for n in (4, 8, 16, 32)]
    assert mu == [16.0, 64.0, 256.0, 1024.0], mu
    fit = lq.fit_power([4, 8, 16, 32], mu)
    assert abs(fit["e"] - 2.0) < 1e-12

    c = lq.Chain(6, lq.DecayKernel.log(0.4), j=0.7, mu=-0.3, delta=1.2)
    for ch in ("J", "mu", "delta"):
        assert close(c.qfi(ch, 0.8), c.exact_qfi(ch, 0.8), 1e-8), ch

    assert close(lq.sine_power_integral(1.0), math.pi / 2, 1e-12)
    assert 0.0 < lq.finite_size_window(0.1, 1000, "log") <= 1.0

    report = lq.oracle_check(seed=1, trials=3, n_list=[2, 4])
    assert report["passed"], report

    try:
        lq.Chain(5, flat)
    except ValueError:
        pass
    else:
        raise AssertionError("odd N accepted")

    print("smoke test ok:", repr(c))


if __name__ == "__main__":
    main()
