#!/usr/bin/env python3
"""Regenerates tests/golden_values.hpp.

High-precision (50-digit) evaluation of the closed-form quantities and root
solves used as frozen expected values in the unit tests. Problem parameters
are first rounded through IEEE double exactly as the library constructs them,
then lifted to mpmath, so the frozen values differ from an exact C++ double
evaluation only by that evaluation's own rounding.

Run from the repository root:  python3 tests/golden/generate_golden.py
"""

import os
import mpmath as mp

mp.mp.dps = 50


def problem_from_delta(delta):
    # mirror make_problem_delta's double rounding
    e1 = (1.0 - delta) / 2.0
    e2 = 1.0 - e1
    d = e2 - e1
    return mp.mpf(e1), mp.mpf(e2), mp.mpf(d)


def zeta_alloc(s, n, q1, q2):
    s = mp.mpf(s)
    u = mp.sqrt(q1 * q2)
    s2n = s ** (2 * n)
    rad = 1 - s * s + 2 * s * u - (q1 + q2)
    return (s - u) * mp.sqrt(1 - s2n) - s**n * mp.sqrt(rad)


def zeta_max(s, n):
    s = mp.mpf(s)
    return s * mp.sqrt(1 - s ** (2 * n)) - s**n * mp.sqrt(1 - s * s)


def fidelity(e1, e2, Q, zeta):
    qbar = 1 - Q
    return (qbar + mp.sqrt(qbar * qbar - 4 * e1 * e2 * zeta * zeta)) / (2 * qbar)


class Branch:
    """Parametric tangency branch, phi in (3pi/2, 2pi), tau = cot(phi) < 0."""

    def __init__(self, s, delta_in, n):
        self.s = mp.mpf(s)
        self.e1, self.e2, self.d = problem_from_delta(delta_in)
        self.n = n
        self.s2n = self.s ** (2 * n)
        self.gamma = self.s2n / (1 - self.s2n)
        self.four_eta = 4 * self.e1 * self.e2
        self.dd = mp.sqrt(self.four_eta)
        self.rt = mp.sqrt(1 - self.s2n)
        self.c = mp.sqrt(1 - self.s * self.s)

    def tau0(self):
        return -(self.s + self.c * self.rt / self.s**self.n) * self.dd / self.d

    def raw(self, tau):
        inv = 1 / mp.sqrt(1 + tau * tau)
        sphi, cphi = -inv, -tau * inv
        a = self.d * tau + self.s * self.dd
        num = self.four_eta * (1 - self.s * self.s) - self.gamma * a * a
        den = 2 * (1 + self.d * sphi - self.s * self.dd * cphi)
        Q = num / den
        zeta = ((1 + self.gamma) * self.dd * self.s + self.gamma * self.d * tau -
                Q * cphi) * self.rt / self.dd
        return Q, zeta, sphi, cphi

    def point(self, tau):
        Q, zeta, sphi, cphi = self.raw(tau)
        u = self.s - zeta / self.rt + self.gamma * (self.s + self.d * tau / self.dd)
        v = Q * (1 + self.d * sphi) / self.four_eta
        half = (v - Q) / self.d
        q1, q2 = v + half, v - half
        sp = (self.s - u) / mp.sqrt((1 - q1) * (1 - q2))
        phi = 2 * mp.pi + mp.atan(1 / tau)
        return dict(Q=Q, zeta=zeta, u=u, v=v, q1=q1, q2=q2, s_prime=sp, phi=phi)

    def tau_pc(self):
        f = lambda t: self.raw(t)[1]
        a = self.tau0()
        b = a
        fa = f(a)
        # geometric march toward 0 until zeta changes sign
        while True:
            b_next = b / 2
            if f(b_next) <= 0:
                a, b = b, b_next
                break
            # linear substeps guard against skipping the dip
            stepped = False
            for j in range(1, 17):
                t = b + (b_next - b) * j / mp.mpf(16)
                if f(t) <= 0:
                    a, b = b + (b_next - b) * (j - 1) / mp.mpf(16), t
                    stepped = True
                    break
            if stepped:
                break
            b = b_next
            if abs(b) < mp.mpf('1e-30'):
                raise RuntimeError('no sign change')
        return bisect(f, a, b)

    def tau_at_Q(self, Q_target):
        tpc = self.tau_pc()
        f = lambda t: self.raw(t)[0] - mp.mpf(Q_target)
        return bisect(f, self.tau0(), tpc)


def bisect(f, a, b, iters=220):
    fa = f(a)
    for _ in range(iters):
        m = (a + b) / 2
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a + b) / 2


def oracle_zeta_min(s, e1, e2, n, Q):
    """High-precision scan + golden-section on the constraint line."""
    s = mp.mpf(s)
    lo = max(mp.mpf(0), (Q - e2) / e1)
    hi = min(mp.mpf(1), Q / e1)

    def f(q1):
        q2 = (Q - e1 * q1) / e2
        if q2 < 0 or q2 > 1:
            return mp.inf
        rad = 1 - s * s + 2 * s * mp.sqrt(q1 * q2) - (q1 + q2)
        if rad < 0:
            return mp.inf
        return (s - mp.sqrt(q1 * q2)) * mp.sqrt(1 - s ** (2 * n)) - \
            s**n * mp.sqrt(rad)

    grid = 4001
    best_i, best = 0, mp.inf
    for i in range(grid):
        q1 = lo + (hi - lo) * i / (grid - 1)
        z = f(q1)
        if z < best:
            best, best_i = z, i
    a = max(lo, lo + (hi - lo) * (best_i - 1) / (grid - 1))
    b = min(hi, lo + (hi - lo) * (best_i + 1) / (grid - 1))
    gr = (mp.sqrt(5) - 1) / 2
    c_ = b - gr * (b - a)
    d_ = a + gr * (b - a)
    fc, fd = f(c_), f(d_)
    while b - a > mp.mpf('1e-35'):
        if fc < fd:
            b, d_, fd = d_, c_, fc
            c_ = b - gr * (b - a)
            fc = f(c_)
        else:
            a, c_, fc = c_, d_, fd
            d_ = a + gr * (b - a)
            fd = f(d_)
    q1 = (a + b) / 2
    return f(q1), q1, (Q - e1 * q1) / e2


def frio_povm(s, e1, e2, Q):
    s, Q = mp.mpf(s), mp.mpf(Q)
    q0 = 2 * mp.sqrt(e1 * e2) * s
    qbar = 1 - Q
    return (qbar + mp.sqrt(qbar * qbar - (Q - q0) ** 2)) / (2 * qbar)


def frio_proj(s, e1, e2, Q):
    s, Q = mp.mpf(s), mp.mpf(Q)
    c = mp.sqrt(1 - s * s)
    qbar = 1 - Q
    d = e2 - e1
    r = mp.sqrt(Q * qbar - e1 * e2 * c * c)
    num = (e2 - e1) * (e2 - Q) * c * c + qbar * s * s + 2 * e1 * s * c * r
    return e2 / qbar * num / (s * s + d * d * c * c)


def segment_top_zeta(s, e1, e2, d, Q):
    s, Q = mp.mpf(s), mp.mpf(Q)
    c = mp.sqrt(1 - s * s)
    four_eta = 4 * e1 * e2
    r = mp.sqrt(Q * (1 - Q) - e1 * e2 * c * c)
    bracket = 2 * (d * d - Q) + (1 + s * s) * four_eta
    return (s * bracket - 2 * d * c * r) / (2 * (s * s + d * d * c * c))


lines = []


def emit(name, value, comment=None):
    txt = mp.nstr(mp.mpf(value), 17, strip_zeros=False)
    if '.' not in txt and 'e' not in txt and 'inf' not in txt:
        txt += '.0'
    suffix = f'  // {comment}' if comment else ''
    lines.append(f'inline constexpr double {name} = {txt};{suffix}')


# -- core -------------------------------------------------------------------
emit('kZetaMaxS05N2', zeta_max(0.5, 2))
emit('kZetaMaxS08N5', zeta_max(0.8, 5))
emit('kZetaS07N3Q0103', zeta_alloc(0.7, 3, mp.mpf(0.1), mp.mpf(0.3)))
e1h = mp.mpf(0.5)
emit('kFidelityHalfQ0AtZetaMax', fidelity(e1h, e1h, mp.mpf(0), zeta_max(0.5, 2)))

# -- geometry ---------------------------------------------------------------
Q_, d_ = mp.mpf(0.3), mp.mpf(0.5)
dd_ = mp.sqrt(1 - d_ * d_)
emit('kEllipseU_Q03D05Phi2', Q_ / dd_ * mp.cos(2))
emit('kEllipseV_Q03D05Phi2', Q_ / (1 - d_ * d_) * (1 + d_ * mp.sin(2)))
s_, n_, z_, u_ = mp.mpf(0.5), 2, mp.mpf(0.1), mp.mpf(0.2)
s2n_ = s_ ** (2 * n_)
emit('kParabolaV_S05N2Z01U02',
     s_ * u_ + (1 - s_ * s_) / 2 -
     (1 - s2n_) / (2 * s2n_) * (u_ - s_ + z_ / mp.sqrt(1 - s2n_)) ** 2)

# -- parametric: (s=0.7, delta=0.1, n=2) closed-form endpoint ----------------
b71 = Branch(0.7, 0.1, 2)
emit('kCotPhiMaxS07D01N2', b71.tau0())
emit('kPhiMaxS07D01N2', 2 * mp.pi + mp.atan(1 / b71.tau0()))

# -- parametric: (s=0.8, delta=0.8, n=2) branch ------------------------------
b88 = Branch(0.8, 0.8, 2)
tau_pc = b88.tau_pc()
emit('kQpcS08D08N2', b88.raw(tau_pc)[0])
emit('kCotPhiMinS08D08N2', tau_pc)
tau_mid = (b88.tau0() + tau_pc) / 2
mid = b88.point(tau_mid)
emit('kMidCotPhiS08D08N2', tau_mid)
emit('kMidPhiS08D08N2', mid['phi'])
emit('kMidQS08D08N2', mid['Q'])
emit('kMidZetaS08D08N2', mid['zeta'])
emit('kMidUS08D08N2', mid['u'])
emit('kMidVS08D08N2', mid['v'])
emit('kMidQ1S08D08N2', mid['q1'])
emit('kMidQ2S08D08N2', mid['q2'])
emit('kMidSPrimeS08D08N2', mid['s_prime'])

# delta = 0 segment branch value
e10, e20, d0 = problem_from_delta(0.0)
emit('kZetaSegS05N2Q01', zeta_alloc(0.5, 2, mp.mpf(0.1), mp.mpf(0.1)))

# -- oracle golden table: (s=0.8, delta=0.8, n=2), 10 rates ------------------
e1a, e2a, da = problem_from_delta(0.8)
qs = [mp.mpf(k) / 25 for k in range(1, 11)]  # 0.04 .. 0.40
zetas = []
for q in qs:
    zmin, q1o, q2o = oracle_zeta_min(0.8, e1a, e2a, 2, q)
    zetas.append(zmin)
lines.append('inline constexpr double kOracleTableQ[10] = {')
lines.append('    ' + ', '.join(mp.nstr(q, 17) for q in qs) + '};')
lines.append('inline constexpr double kOracleTableZeta[10] = {')
for z in zetas:
    lines.append(f'    {mp.nstr(z, 17)},')
lines.append('};')

# -- frio --------------------------------------------------------------------
q0a = 2 * mp.sqrt(e1a * e2a) * mp.mpf(0.8)
emit('kQthS08D08', 2 * e1a * e2a * (1 - mp.mpf(0.8) ** 2) / (1 - q0a))
emit('kPtsProjS08D08Q03', frio_proj(0.8, e1a, e2a, 0.3))
e1b, e2b, db = problem_from_delta(0.1)
emit('kPtsPovmS07D01Q02', frio_povm(0.7, e1b, e2b, 0.2))

# frio_clone_fidelity sample: n=1, s=0.5, eta1=0.4
e1c = mp.mpf(0.4)
e2c = 1 - e1c
s2n1 = mp.mpf(0.5) ** 2
p1c, r1c, p2c, r2c = mp.mpf(0.7), mp.mpf(0.05), mp.mpf(0.8), mp.mpf(0.05)
Qc = e1c * (1 - p1c - r1c) + e2c * (1 - p2c - r2c)
emit('kFrioCloneQN1', Qc)
emit('kFrioCloneFidN1',
     (e1c * (p1c + r1c * s2n1) + e2c * (p2c + r2c * s2n1)) / (1 - Qc))

# -- asymptotic ---------------------------------------------------------------
zv = (q0a - mp.mpf('0.05')) / (2 * mp.sqrt(e1a * e2a))
emit('kAsymZetaVertexS08D08Q005', zv)
emit('kAsymFVertexS08D08Q005', fidelity(e1a, e2a, mp.mpf('0.05'), zv))
zs = segment_top_zeta(0.8, e1a, e2a, da, 0.3)
emit('kAsymZetaSegTopS08D08Q03', zs)
emit('kAsymFSegTopS08D08Q03', fidelity(e1a, e2a, mp.mpf('0.3'), zs))
qQ = mp.mpf('0.3')
lhs = (1 - qQ) ** 2 - 4 * e1a * e2a * zs * zs
emit('kIdentityLhsS08D08Q03', lhs)
cA = mp.sqrt(1 - mp.mpf(0.8) ** 2)
rA = mp.sqrt(qQ * (1 - qQ) - e1a * e2a * cA * cA)
brk = 2 * mp.mpf(0.8) * cA * (4 * e1a * e2a) * rA + \
    da * (2 * (da * da - qQ) + (1 + mp.mpf(0.8) ** 2) * (4 * e1a * e2a))
emit('kIdentityRhsS08D08Q03',
     (brk / (2 * (mp.mpf(0.8) ** 2 + da * da * cA * cA))) ** 2)

# -- convergence golden table: (0.8, 0.8), Q = 0.2, n in {2,4,8,16,32} -------
lines.append('inline constexpr int kConvergenceN[5] = {2, 4, 8, 16, 32};')
lines.append('inline constexpr double kConvergenceF[5] = {')
for n in (2, 4, 8, 16, 32):
    bn = Branch(0.8, 0.8, n)
    t = bn.tau_at_Q(0.2)
    Qn, zn, _, _ = bn.raw(t)
    lines.append(f'    {mp.nstr(fidelity(e1a, e2a, Qn, zn), 17)},')
lines.append('};')
emit('kConvergenceFInfinity', frio_povm(0.8, e1a, e2a, 0.2) if mp.mpf('0.2') <=
     2 * e1a * e2a * (1 - mp.mpf(0.8)**2) / (1 - q0a) else frio_proj(0.8, e1a, e2a, 0.2))

# -- neumark: optimal rotation and golden isometry ---------------------------
th, thp, dpost = mp.mpf('0.3'), mp.mpf('0.1'), mp.mpf('0.5')
om = mp.atan2(dpost * mp.sin(2 * (th - thp)), mp.cos(2 * (th - thp))) / 2
emit('kOmegaTh03Thp01D05', om)
f_pre = mp.mpf(1) / 2 + (mp.cos(2 * (th - thp)) * mp.cos(2 * om) +
                         dpost * mp.sin(2 * (th - thp)) * mp.sin(2 * om)) / 2
emit('kOmegaFTh03Thp01D05', f_pre)

b71n = Branch(0.7, 0.1, 2)
t71 = b71n.tau_at_Q(0.1)
p71 = b71n.point(t71)
q1r, q2r = p71['q1'], p71['q2']
p1r, p2r = 1 - q1r, 1 - q2r
u_r = mp.sqrt(q1r * q2r)
sprime_r = (mp.mpf(0.7) - u_r) / mp.sqrt(p1r * p2r)
qbar_r = b71n.e1 * p1r + b71n.e2 * p2r
e1p, e2p = b71n.e1 * p1r / qbar_r, b71n.e2 * p2r / qbar_r
th_r = mp.acos(mp.mpf(0.7) ** 2) / 2
thp_r = mp.acos(sprime_r) / 2
om_r = mp.atan2((e2p - e1p) * mp.sin(2 * (th_r - thp_r)),
                mp.cos(2 * (th_r - thp_r))) / 2
al_r = mp.acos(mp.mpf(0.7)) / 2
c1 = [mp.cos(thp_r - om_r), mp.sin(thp_r - om_r)]
c2 = [mp.cos(thp_r + om_r), -mp.sin(thp_r + om_r)]
phi_r = [mp.cos(om_r), -mp.sin(om_r)]
w1 = [mp.sqrt(p1r) * c1[0], mp.sqrt(p1r) * c1[1],
      mp.sqrt(q1r) * phi_r[0], mp.sqrt(q1r) * phi_r[1]]
w2 = [mp.sqrt(p2r) * c2[0], mp.sqrt(p2r) * c2[1],
      mp.sqrt(q2r) * phi_r[0], mp.sqrt(q2r) * phi_r[1]]
col0 = [(w1[i] + w2[i]) / (2 * mp.cos(al_r)) for i in range(4)]
col1 = [(w1[i] - w2[i]) / (2 * mp.sin(al_r)) for i in range(4)]
emit('kRealQ1S07D01N2Q01', q1r)
emit('kRealQ2S07D01N2Q01', q2r)
emit('kRealSPrimeS07D01N2Q01', sprime_r)
emit('kRealOmegaS07D01N2Q01', om_r)
lines.append('inline constexpr double kRealIsometryCol0[4] = {')
for v in col0:
    lines.append(f'    {mp.nstr(v, 17)},')
lines.append('};')
lines.append('inline constexpr double kRealIsometryCol1[4] = {')
for v in col1:
    lines.append(f'    {mp.nstr(v, 17)},')
lines.append('};')

header = '''#pragma once

// Frozen expected values for the unit and acceptance tests.
// Generated by tests/golden/generate_golden.py (50-digit arithmetic);
// do not edit by hand.

namespace golden {

'''
footer = '''
}  // namespace golden
'''

out = os.path.join(os.path.dirname(__file__), '..', 'golden_values.hpp')
with open(out, 'w') as fh:
    fh.write(header)
    fh.write('\n'.join(lines))
    fh.write(footer)
print('wrote', os.path.normpath(out))
