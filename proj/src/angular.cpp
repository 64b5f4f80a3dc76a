#include "atomkit/angular.hpp"
#include "atomkit/error.hpp"
#include "atomkit/units.hpp"

#include <charconv>
#include <cmath>

namespace atomkit {

HalfInt parse_halfint(const std::string& s)
{
    auto bad = [&] { return DomainError("not an integer or half-integer: " + s); };
    const char* b = s.data();
    const char* e = b + s.size();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        int num = 0, den = 0;
        auto r1 = std::from_chars(b, b + slash, num);
        auto r2 = std::from_chars(b + slash + 1, e, den);
        if (r1.ec != std::errc() || r1.ptr != b + slash || r2.ec != std::errc() || r2.ptr != e)
            throw bad();
        if (den == 1) return HalfInt::from_int(num);
        if (den == 2) return HalfInt::from_twice(num);
        throw bad();
    }
    double v = 0;
    auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) throw bad();
    double t = 2 * v;
    if (std::abs(t - std::round(t)) > 1e-12) throw bad();
    return HalfInt::from_twice(int(std::lround(t)));
}

}  // namespace atomkit

namespace atomkit::angular {

std::pair<double, double> ladder_coefficients(HalfInt J, HalfInt m)
{
    require_pair(J, m);
    // (J-m)(J+m+1) in doubled integers: (2J-2m)(2J+2m+2)/4
    const long jm = J.twice - m.twice, jp = J.twice + m.twice;
    const double sp = std::sqrt(double(jm * (jp + 2)) / 4.0);
    const double sm = std::sqrt(double(jp * (jm + 2)) / 4.0);
    return {sp, sm};
}

AngularRep spin_representation(HalfInt J)
{
    if (J.twice < 0) throw DomainError("spin number must be nonnegative");
    const int d = J.twice + 1;
    AngularRep rep;
    rep.J = J;
    rep.H1 = Eigen::MatrixXcd::Zero(d, d);
    rep.H2 = Eigen::MatrixXcd::Zero(d, d);
    rep.H3 = Eigen::MatrixXcd::Zero(d, d);
    const cplx I(0, 1);
    for (int i = 0; i < d; ++i) {
        HalfInt m = HalfInt::from_twice(-J.twice + 2 * i);
        auto [sp, sm] = ladder_coefficients(J, m);
        rep.H3(i, i) = m.value();
        if (i + 1 < d) {
            rep.H1(i + 1, i) += sp / 2;
            rep.H2(i + 1, i) += sp / (2.0 * I);
        }
        if (i > 0) {
            rep.H1(i - 1, i) += sm / 2;
            rep.H2(i - 1, i) -= sm / (2.0 * I);
        }
    }
    return rep;
}

Eigen::Matrix2cd spin_half_rotation(double theta, const Eigen::Vector3d& n)
{
    const cplx I(0, 1);
    Eigen::Matrix2cd sn;
    sn << n.z(), cplx(n.x(), -n.y()), cplx(n.x(), n.y()), -n.z();
    return std::cos(theta / 2) * Eigen::Matrix2cd::Identity() + I * std::sin(theta / 2) * sn;
}

std::vector<std::vector<double>> legendre_table(int l_max, double theta)
{
    std::vector<std::vector<double>> p(l_max + 1);
    for (int l = 0; l <= l_max; ++l) p[l].assign(l + 1, 0.0);
    const double x = std::cos(theta), s = std::sin(theta);
    double pmm = std::sqrt(1.0 / (4 * pi));
    for (int m = 0; m <= l_max; ++m) {
        if (m > 0) pmm *= -std::sqrt((2.0 * m + 1) / (2.0 * m)) * s;
        p[m][m] = pmm;
        if (m + 1 <= l_max) p[m + 1][m] = x * std::sqrt(2.0 * m + 3) * pmm;
        for (int l = m + 2; l <= l_max; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1) / (double(l) * l - double(m) * m));
            const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) /
                                       (4.0 * (l - 1) * (l - 1) - 1));
            p[l][m] = a * (x * p[l - 1][m] - b * p[l - 2][m]);
        }
    }
    return p;
}

SphericalHarmonic::SphericalHarmonic(int l, int m) : l_(l), m_(m)
{
    if (l < 0 || std::abs(m) > l)
        throw DomainError("spherical harmonic needs 0 <= |m| <= l, got l=" + std::to_string(l) +
                          " m=" + std::to_string(m));
}

double SphericalHarmonic::F(double theta) const
{
    const int am = std::abs(m_);
    double v = legendre_table(l_, theta)[l_][am];
    return (m_ < 0 && am % 2) ? -v : v;
}

cplx SphericalHarmonic::operator()(double theta, double phi) const
{
    return F(theta) * std::polar(1.0, m_ * phi);
}

SphericalHarmonic spherical_harmonic(int l, int m) { return {l, m}; }

// ---- l (x) 1/2 coupling

static int pidx(int l, int m, int spin) { return 2 * (m + l) + (spin > 0 ? 1 : 0); }

// J+ on the product space; real in this basis.
static Eigen::MatrixXd product_raise(int l)
{
    const int d = 2 * (2 * l + 1);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(d, d);
    const HalfInt L = HalfInt::from_int(l);
    for (int m = -l; m <= l; ++m)
        for (int s : {-1, 1}) {
            const int from = pidx(l, m, s);
            if (m < l) P(pidx(l, m + 1, s), from) += ladder_coefficients(L, HalfInt::from_int(m)).first;
            if (s < 0) P(pidx(l, m, 1), from) += 1.0;
        }
    return P;
}

SpinorHarmonic couple_l_half(int l, Branch b, HalfInt k)
{
    if (l < 0) throw DomainError("orbital number must be nonnegative");
    if (b == Branch::minus && l == 0) throw EmptySpaceError("the space E_-(0)=0 is empty");
    const HalfInt j = HalfInt::from_twice(2 * l + (b == Branch::plus ? 1 : -1));
    if (k.is_integer()) throw DomainError("k must be half-odd");
    require_pair(j, k);

    const int d = 2 * (2 * l + 1);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    // lowest-weight state k = -j
    if (b == Branch::plus) {
        v[pidx(l, -l, -1)] = 1;
    } else {
        // orthogonal to the plus-branch vector at weight -l+1/2, which is
        // proportional to J+ (e_{-l} down) = s e_{-l+1} down + e_{-l} up
        const double s = ladder_coefficients(HalfInt::from_int(l), HalfInt::from_int(-l)).first;
        v[pidx(l, -l + 1, -1)] = 1;
        v[pidx(l, -l, 1)] = -s;
        v.normalize();
    }
    const Eigen::MatrixXd P = product_raise(l);
    for (int step = 0; step < (k.twice + j.twice) / 2; ++step) v = (P * v).normalized();

    // phase: positive coefficient on the component with largest |m|
    int best = -1, best_m = -1;
    for (int i = 0; i < d; ++i)
        if (std::abs(v[i]) > 1e-14) {
            const int m = i / 2 - l;
            if (std::abs(m) > best_m) { best_m = std::abs(m); best = i; }
        }
    if (v[best] < 0) v = -v;

    SpinorHarmonic out;
    out.l = l;
    out.j = j;
    out.k = k;
    out.branch = b;
    for (int i = 0; i < d; ++i)
        if (std::abs(v[i]) > 1e-14) out.components.push_back({i / 2 - l, (i % 2) ? 1 : -1, v[i]});
    return out;
}

SpinorHarmonic couple_l_half(int l, HalfInt j, HalfInt k)
{
    if (l == 0 && j.twice == -1) throw EmptySpaceError("the space E_-(0)=0 is empty");
    if (j.twice == 2 * l + 1) return couple_l_half(l, Branch::plus, k);
    if (j.twice == 2 * l - 1) return couple_l_half(l, Branch::minus, k);
    throw DomainError("j must equal l +/- 1/2, got l=" + std::to_string(l) + " j=" + j.str());
}

std::array<cplx, 2> SpinorHarmonic::operator()(double theta, double phi) const
{
    std::array<cplx, 2> out{};
    for (const auto& c : components) out[c.spin > 0 ? 0 : 1] += c.coeff * SphericalHarmonic(l, c.m)(theta, phi);
    return out;
}

Eigen::VectorXd SpinorHarmonic::vector() const
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * (2 * l + 1));
    for (const auto& c : components) v[pidx(l, c.m, c.spin)] = c.coeff;
    return v;
}

ProductOperators product_operators(int l)
{
    auto L = spin_representation(HalfInt::from_int(l));
    auto S = spin_representation(half);  // basis (down, up) matches pidx
    const int dl = L.dim();
    auto kron = [](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
        Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j)
                K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        return K;
    };
    const Eigen::MatrixXcd Il = Eigen::MatrixXcd::Identity(dl, dl);
    const Eigen::MatrixXcd Is = Eigen::MatrixXcd::Identity(2, 2);
    ProductOperators P;
    P.J1 = kron(L.H1, Is) + kron(Il, S.H1);
    P.J2 = kron(L.H2, Is) + kron(Il, S.H2);
    P.J3 = kron(L.H3, Is) + kron(Il, S.H3);
    P.sigma_dot_L = 2.0 * (kron(L.H1, S.H1) + kron(L.H2, S.H2) + kron(L.H3, S.H3));
    return P;
}

double spin_orbit_expectation(const SpinorHarmonic& s)
{
    const Eigen::VectorXcd v = s.vector().cast<cplx>();
    return (v.adjoint() * product_operators(s.l).sigma_dot_L * v)(0, 0).real();
}

// ---- Lande factors

static Rational jj1(HalfInt J) { return Rational(J.twice, 2) * Rational(J.twice + 2, 2); }

static void require_lande(int L, HalfInt J)
{
    if (J.twice == 0) throw DomainError("Lande factor undefined for J=0 (division by zero)");
    if (L < 0 || std::abs(J.twice - 2 * L) != 1)
        throw DomainError("Lande factor needs J = L +/- 1/2, got L=" + std::to_string(L) +
                          " J=" + J.str());
}

Rational lande_g_exact(int L, HalfInt J)
{
    require_lande(L, J);
    return Rational(3, 2) + (Rational(3, 4) - Rational(L * (L + 1))) / (Rational(2) * jj1(J));
}

double lande_g(int L, HalfInt J) { return lande_g_exact(L, J).to_double(); }

Rational vector_model_g_exact(int L, HalfInt J)
{
    require_lande(L, J);
    // g = 1 + (g_s - 1) [J(J+1) + S(S+1) - L(L+1)] / (2 J(J+1)), g_s = 2, S = 1/2
    const Rational jj = jj1(J);
    return Rational(1) + (jj + Rational(3, 4) - Rational(L * (L + 1))) / (Rational(2) * jj);
}

double vector_model_g(int L, HalfInt J) { return vector_model_g_exact(L, J).to_double(); }

}  // namespace atomkit::angular
