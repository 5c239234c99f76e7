"""Independent numpy reference values for the C++ tests.

Builds gates, channels, attractor spaces (by full SVD of stacked superoperators)
and entropies from scratch, then writes tests/oracle_values.hpp.
"""
import functools
import pathlib

import numpy as np

HERE = pathlib.Path(__file__).resolve().parent


def kron(*a):
    return functools.reduce(np.kron, a)


def gate(i, j, phi, nq):
    d = 2 ** nq
    u = np.array([[np.cos(phi), np.sin(phi)], [np.sin(phi), -np.cos(phi)]])
    U = np.zeros((d, d))
    for y in range(d):
        if not (y >> (nq - 1 - i)) & 1:
            U[y, y] = 1.0
            continue
        bj = (y >> (nq - 1 - j)) & 1
        for b in (0, 1):
            y2 = (y & ~(1 << (nq - 1 - j))) | (b << (nq - 1 - j))
            U[y2, y] += u[b, bj]
    return U


def koenig(k, n):
    return [(s, k + e) for s in range(k) for e in range(n)]


def complete_env(k, n):
    return koenig(k, n) + [(k + a, k + b) for a in range(n) for b in range(n) if a != b]


def env_cycle(k, n):
    return koenig(k, n) + [(k + a, k + (a + 1) % n) for a in range(n)]


def attractor(edges, nq, phi, lam):
    d = 2 ** nq
    blocks = []
    for (i, j) in edges:
        U = gate(i, j, phi, nq)
        blocks.append(np.kron(U, U) - lam * np.eye(d * d))
    M = np.vstack(blocks)
    _, s, vh = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(s > 1e-9))
    return vh[rank:].T


def project(rho, qp, qm, odd):
    d = rho.shape[0]
    v = rho.reshape(-1)
    out = qp @ (qp.T @ v)
    if qm.shape[1]:
        m = qm @ (qm.T @ v)
        out = out - m if odd else out + m
    return out.reshape(d, d)


def entropy(rho):
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())


def ptrace_keep(rho, nq, keep):
    t = rho.reshape([2] * (2 * nq))
    drop = [q for q in range(nq) if q not in keep]
    for c, q in enumerate(sorted(drop, reverse=True)):
        cur = nq - c
        t = np.trace(t, axis1=q, axis2=q + cur)
    dk = 2 ** len(keep)
    return t.reshape(dk, dk)


def pip(rho, k, n):
    nq = k + n
    rs = ptrace_keep(rho, nq, list(range(k)))
    p = np.real(np.diag(rs))
    p = p[p > 1e-15]
    hc = float(-(p * np.log2(p)).sum())
    hs = entropy(rs)
    rows = []
    for L in range(1, n + 1):
        e = list(range(k, k + L))
        he = entropy(ptrace_keep(rho, nq, e))
        hse = entropy(ptrace_keep(rho, nq, list(range(k)) + e))
        rows.append((hs + he - hse) / hc)
    return rows


def registry_input(k, n, y):
    a = np.ones(2 ** k) / np.sqrt(2 ** k)
    z = np.zeros(2 ** n)
    z[y] = 1.0
    return np.kron(np.outer(a, a), np.outer(z, z))


def iterate(rho, edges, nq, phi, N):
    gates = [gate(i, j, phi, nq) for (i, j) in edges]
    p = 1.0 / len(gates)
    for _ in range(N):
        rho = sum(p * U @ rho @ U.T for U in gates)
    return rho


def arr(name, values):
    body = ", ".join(repr(float(v)) for v in values)
    return f"inline constexpr double {name}[] = {{{body}}};\n"


def main():
    out = ["#pragma once\n\n", "// Generated by tests/oracle/make_oracles.py; do not edit.\n\n",
           "namespace oracle {\n\n"]
    half = np.pi / 2

    rho = registry_input(1, 4, 0)
    qp, qm = attractor(koenig(1, 4), 5, half, 1), attractor(koenig(1, 4), 5, half, -1)
    out.append(arr("kKoenig14RegistryZeroEven", pip(project(rho, qp, qm, False), 1, 4)))
    out.append(arr("kKoenig14RegistryZeroOdd", pip(project(rho, qp, qm, True), 1, 4)))
    out.append(arr("kKoenig14RegistryZeroN10", pip(iterate(rho, koenig(1, 4), 5, half, 10), 1, 4)))

    cp, cm = attractor(complete_env(1, 4), 5, half, 1), attractor(complete_env(1, 4), 5, half, -1)
    out.append(arr("kCompleteEnv14RegistryZero", pip(project(rho, cp, cm, False), 1, 4)))

    extra = koenig(1, 4) + [(1, 2)]
    ep, em = attractor(extra, 5, half, 1), attractor(extra, 5, half, -1)
    out.append(arr("kKoenig14OneBindingRegistryZero", pip(project(rho, ep, em, False), 1, 4)))

    dims = []
    for name, edges, nq in [("koenig_2_1", koenig(2, 1), 3), ("env_cycle_1_3", env_cycle(1, 3), 4),
                            ("one_binding_1_3", koenig(1, 3) + [(1, 2)], 4)]:
        dims += [attractor(edges, nq, half, 1).shape[1], attractor(edges, nq, half, -1).shape[1]]
    out.append("// plus/minus pairs: koenig(2,1), env_cycle(1,3), koenig(1,3) plus edge E1->E2\n")
    out.append("inline constexpr int kNumericDims[] = {" + ", ".join(str(d) for d in dims) + "};\n")

    dims_third = [attractor(koenig(1, 2), 3, np.pi / 3, s).shape[1] for s in (1, -1)]
    out.append("inline constexpr int kKoenig12ThirdPiDims[] = {" + ", ".join(map(str, dims_third)) + "};\n")

    # symmetry record state: S (a, b) controls u(phi) on E = |0>, then S is dephased
    gaps = []
    for phi in (np.pi / 4, np.pi / 3, 2 * np.pi / 3):
        psi = gate(0, 1, phi, 2) @ np.kron(np.array([1, 1]) / np.sqrt(2), np.array([1.0, 0.0]))
        r = np.outer(psi, psi)
        for a in (0, 1):
            for b in (0, 1):
                if a != b:
                    r[2 * a:2 * a + 2, 2 * b:2 * b + 2] = 0
        gaps.append(entropy(r) - entropy(ptrace_keep(r, 2, [1])))
    out.append(arr("kSymmetryGapQuarterThirdTwoThirdsPi", gaps))

    out.append("\n}  // namespace oracle\n")
    (HERE.parent / "oracle_values.hpp").write_text("".join(out))


if __name__ == "__main__":
    main()
