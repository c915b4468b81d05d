#include "oscsum/gauss.hpp"

#include <cmath>

#include "oscsum/errors.hpp"
#include "oscsum/numeric.hpp"
#include "oscsum/rational.hpp"

namespace oscsum {

namespace {

long long mod_norm(long long x, long long Q) {
    long long r = x % Q;
    return r < 0 ? r + Q : r;
}

long long pow_mod(long long base, int e, long long m) {
    long long b = mod_norm(base, m);
    long long r = 1 % m;
    for (int i = 0; i < e; ++i) r = static_cast<long long>((static_cast<__int128>(r) * b) % m);
    return r;
}

// iterate residues (1..Q)^D
template <class F>
void residue_walk(long long Q, int D, F&& f) {
    std::vector<long long> r(static_cast<size_t>(D), 1);
    for (;;) {
        f(std::span<const long long>(r));
        int i = D - 1;
        while (i >= 0 && r[i] == Q) {
            r[i] = 1;
            --i;
        }
        if (i < 0) break;
        ++r[i];
    }
}

double pow_ll(long long b, int e) {
    double p = 1.0;
    for (int i = 0; i < e; ++i) p *= static_cast<double>(b);
    return p;
}

}  // namespace

RationalPoint::RationalPoint(int d_, int D_, std::vector<long long> A_, std::vector<long long> B_,
                             long long Q_)
    : d(d_), D(D_), A(std::move(A_)), B(std::move(B_)), Q(Q_) {
    if (Q < 1) throw PreconditionError("RationalPoint: Q >= 1 required");
    auto gamma = index_set(d, D);
    if (A.size() != gamma.size())
        throw UsageError("RationalPoint: |A| must match the exponent set size " +
                         std::to_string(gamma.size()));
    if (static_cast<int>(B.size()) != D) throw UsageError("RationalPoint: |B| must equal D");
}

long long RationalPoint::gcd_A_Q() const {
    long long g = Q;
    for (long long a : A) g = gcd_ll(g, mod_norm(a, Q));
    return g;
}

long long RationalPoint::gcd_AB_Q() const {
    long long g = gcd_A_Q();
    for (long long b : B) g = gcd_ll(g, mod_norm(b, Q));
    return g;
}

long long RationalPoint::phase_numerator(std::span<const long long> r) const {
    auto gamma = index_set(d, D);
    long long num = 0;
    for (size_t i = 0; i < gamma.size(); ++i) {
        long long mono = 1;
        for (int j = 0; j < D; ++j)
            if (gamma[i].exps[j] > 0)
                mono = static_cast<long long>(
                    (static_cast<__int128>(mono) * pow_mod(r[j], gamma[i].exps[j], Q)) % Q);
        num = static_cast<long long>((num + static_cast<__int128>(mod_norm(A[i], Q)) * mono) % Q);
    }
    for (int j = 0; j < D; ++j)
        num = static_cast<long long>((num + static_cast<__int128>(mod_norm(B[j], Q)) * mod_norm(r[j], Q)) % Q);
    return num;
}

std::complex<double> GaussSum::value() const {
    double scale = 1.0;
    for (int i = 0; i < D; ++i) scale /= static_cast<double>(Q);
    return terms.value(scale);
}

GaussSum gauss_sum(const RationalPoint& pt, long long residue_budget) {
    double total = pow_ll(pt.Q, pt.D);
    if (total > static_cast<double>(residue_budget))
        throw BudgetError("gauss_sum: residue enumeration exceeds budget");
    GaussSum gs;
    gs.Q = pt.Q;
    gs.D = pt.D;
    gs.terms = CycloSum(static_cast<int>(pt.Q));
    residue_walk(pt.Q, pt.D, [&](std::span<const long long> r) {
        gs.terms.add(-pt.phase_numerator(r));
    });
    return gs;
}

VanishingCheck check_vanishing(const RationalPoint& pt) {
    if (pt.gcd_AB_Q() != 1)
        throw PreconditionError("check_vanishing: requires gcd({A} u {B}, Q) = 1");
    VanishingCheck out;
    out.should_vanish = pt.gcd_A_Q() > 1;
    auto gs = gauss_sum(pt);
    out.is_zero = gs.is_zero_exact();
    out.abs_value = gs.abs();
    out.pass = !out.should_vanish || out.is_zero;
    return out;
}

RecoveryCheck recovery_identity(const RationalPoint& pt, std::span<const long long> n) {
    const long long Q = pt.Q;
    const int D = pt.D;
    double total = pow_ll(Q, 2 * D);
    if (total > static_cast<double>(1LL << 26)) throw BudgetError("recovery_identity: Q too large");

    // strip the shift numerators: the identity sums over all of them
    RationalPoint base = pt;
    std::fill(base.B.begin(), base.B.end(), 0LL);

    CycloSum lhs_terms(static_cast<int>(Q));
    residue_walk(Q, D, [&](std::span<const long long> b) {
        residue_walk(Q, D, [&](std::span<const long long> r) {
            long long e = -base.phase_numerator(r);
            for (int j = 0; j < D; ++j) e += mod_norm(b[j], Q) * mod_norm(n[j] - r[j], Q);
            lhs_terms.add(e);
        });
    });

    long long rhs_exp = mod_norm(-base.phase_numerator(n), Q);
    long long qd = 1;
    for (int i = 0; i < D; ++i) qd *= Q;
    CycloSum rhs_terms(static_cast<int>(Q));
    rhs_terms.add(rhs_exp, qd);

    RecoveryCheck out;
    out.exact_equal = lhs_terms.equals(rhs_terms);
    out.lhs = lhs_terms.value(1.0 / static_cast<double>(qd));
    out.rhs = rhs_terms.value(1.0 / static_cast<double>(qd));
    out.abs_diff = std::abs(out.lhs - out.rhs);
    return out;
}

OrthogonalityResult orthogonality(long long Q, std::span<const long long> x) {
    if (Q < 1) throw PreconditionError("orthogonality: Q >= 1 required");
    const int D = static_cast<int>(x.size());
    CycloSum acc(static_cast<int>(Q));
    residue_walk(Q, D, [&](std::span<const long long> b) {
        long long e = 0;
        for (int j = 0; j < D; ++j) e += mod_norm(b[j], Q) * mod_norm(x[j], Q);
        acc.add(e);
    });
    long long qd = 1;
    for (int i = 0; i < D; ++i) qd *= Q;

    OrthogonalityResult out;
    out.divisible = true;
    for (int j = 0; j < D; ++j)
        if (mod_norm(x[j], Q) != 0) out.divisible = false;
    CycloSum target(static_cast<int>(Q));
    if (out.divisible) target.add(0, qd);
    out.exact_indicator = acc.equals(target);
    out.value = acc.value(1.0 / static_cast<double>(qd));
    return out;
}

KernelDensityResult kernel_K0_density(const RationalPoint& a, const RationalPoint& a_prime,
                                      double threshold, long long budget) {
    if (a.Q != a_prime.Q || a.D != a_prime.D || a.d != a_prime.d)
        throw UsageError("kernel_K0_density: points must share (d, D, Q)");
    const long long Q = a.Q;
    const int D = a.D;
    if (pow_ll(Q, 2 * D) > static_cast<double>(budget))
        throw BudgetError("kernel_K0_density: Q^{2D} exceeds budget");

    RationalPoint pa = a, pb = a_prime;
    std::fill(pa.B.begin(), pa.B.end(), 0LL);
    std::fill(pb.B.begin(), pb.B.end(), 0LL);

    long long qd = 1;
    for (int i = 0; i < D; ++i) qd *= Q;

    KernelDensityResult out;
    out.threshold = threshold;
    out.shifts = qd;
    long long exceptional = 0;
    double max_all = 0.0, max_off = 0.0;
    std::vector<long long> shifted(static_cast<size_t>(D));
    residue_walk(Q, D, [&](std::span<const long long> v) {
        CycloSum w(static_cast<int>(Q));
        residue_walk(Q, D, [&](std::span<const long long> r) {
            for (int j = 0; j < D; ++j) shifted[j] = v[j] + r[j];
            w.add(-pa.phase_numerator(shifted) + pb.phase_numerator(r));
        });
        double wv = std::abs(w.value(1.0 / static_cast<double>(qd)));
        max_all = std::max(max_all, wv);
        if (wv > threshold)
            ++exceptional;
        else
            max_off = std::max(max_off, wv);
    });
    out.exceptional_density = static_cast<double>(exceptional) / static_cast<double>(qd);
    out.max_off_exceptional = max_off;
    out.max_value = max_all;
    return out;
}

}  // namespace oscsum
