#include "fluxjac/cli/manufactured.hpp"

#include "fluxjac/operators/quadrature.hpp"
#include "fluxjac/semidiscrete/residual.hpp"

namespace fluxjac {

namespace {

// Points the source closure samples: solution nodes, or volume quadrature
// points for the modal scheme.
const std::vector<double>& sample_points(const GlobalDiscretization& d) {
    return d.is_modal() ? d.xq : d.x;
}

}  // namespace

void attach_burgers_source(SemiDiscreteSystem& sys, double k_freq) {
    if (sys.law().kind != LawKind::burgers)
        throw ConfigError("burgers source requires the burgers law");
    const auto pts = sample_points(sys.disc);
    const ManufacturedBurgers mms{k_freq};
    Source src;
    src.value = [pts, mms](double t, std::span<double> out) {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = mms.source(pts[i], t);
    };
    src.time_derivative = [pts, mms](double t, std::span<double> out) {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = mms.source_dt(pts[i], t);
    };
    sys.source = src;
}

void attach_swe1d_source(SemiDiscreteSystem& sys, double k_freq) {
    if (sys.law().kind != LawKind::shallow_water || sys.law().dim != 1)
        throw ConfigError("swe source requires the 1D shallow water law");
    const auto pts = sample_points(sys.disc);
    const ManufacturedSwe1d mms{k_freq, sys.law().gravity};
    const std::size_t n = pts.size();
    Source src;
    src.value = [pts, mms, n](double t, std::span<double> out) {
        for (std::size_t i = 0; i < n; ++i) {
            double s1, s2;
            mms.source(pts[i], t, s1, s2);
            out[i] = s1;
            out[n + i] = s2;
        }
    };
    src.time_derivative = [pts, mms, n](double t, std::span<double> out) {
        for (std::size_t i = 0; i < n; ++i) {
            double s1, s2;
            mms.source_dt(pts[i], t, s1, s2);
            out[i] = s1;
            out[n + i] = s2;
        }
    };
    sys.source = src;
}

std::vector<double> manufactured_initial(const SemiDiscreteSystem& sys, double k_freq,
                                         double t) {
    const auto& d = sys.disc;
    const auto& law = sys.law();
    const int nf = law.n_fields;

    auto field_value = [&](double x, int f) {
        if (law.kind == LawKind::burgers) return ManufacturedBurgers{k_freq}.exact(x, t);
        const ManufacturedSwe1d mms{k_freq, law.gravity};
        return f == 0 ? mms.exact_h(x, t) : mms.exact_hu(x, t);
    };

    if (!d.is_modal()) {
        const int n = d.n_per_field();
        std::vector<double> u(static_cast<std::size_t>(nf) * n);
        for (int f = 0; f < nf; ++f)
            for (int i = 0; i < n; ++i) u[f * n + i] = field_value(d.x[i], f);
        return u;
    }
    const auto& el = d.elem;
    const int np = el.n_p, nq = el.n_q;
    const int n = d.n_per_field();
    std::vector<double> u(static_cast<std::size_t>(nf) * n);
    std::vector<double> vals(nq), coef(np);
    for (int e = 0; e < d.kx; ++e)
        for (int f = 0; f < nf; ++f) {
            for (int q = 0; q < nq; ++q) vals[q] = field_value(d.xq[e * nq + q], f);
            detail::matvec(el.p, vals.data(), coef.data());
            for (int m = 0; m < np; ++m) u[f * n + e * np + m] = coef[m];
        }
    return u;
}

double manufactured_l2_error(const SemiDiscreteSystem& sys, std::span<const double> u,
                             double k_freq, double t) {
    const auto& d = sys.disc;
    const auto& law = sys.law();
    const int nf = law.n_fields;
    const int np = d.is_modal() ? d.elem.n_p : d.degree + 1;
    const int n = d.n_per_field();

    auto field_value = [&](double x, int f) {
        if (law.kind == LawKind::burgers) return ManufacturedBurgers{k_freq}.exact(x, t);
        const ManufacturedSwe1d mms{k_freq, law.gravity};
        return f == 0 ? mms.exact_h(x, t) : mms.exact_hu(x, t);
    };

    // over-integrated rule and an evaluation matrix from the element
    // representation to it
    const int n_gauss = 2 * (d.degree + 1) + 2;
    auto [xg, wg] = gauss_nodes(n_gauss);
    DenseMatrix vg, vgx, eval;
    legendre_vandermonde(xg, d.degree, vg, vgx);
    if (d.is_modal()) {
        eval = vg;
    } else if (d.scheme == SchemeKind::fv) {
        eval = DenseMatrix::Ones(n_gauss, 1);
    } else {
        DenseMatrix vn, vnx;
        Vector nodes = Eigen::Map<const Vector>(lobatto_nodes(d.degree).first.data(), np);
        legendre_vandermonde(nodes, d.degree, vn, vnx);
        eval = vg * vn.inverse();
    }

    const double jac = d.hx / 2.0;
    double err2 = 0.0;
    std::vector<double> local(np), at_gauss(n_gauss);
    for (int e = 0; e < d.kx; ++e) {
        const double xc = -1.0 + (e + 0.5) * d.hx;
        for (int f = 0; f < nf; ++f) {
            for (int m = 0; m < np; ++m) local[m] = u[f * n + e * np + m];
            for (int q = 0; q < n_gauss; ++q) {
                double acc = 0.0;
                for (int m = 0; m < np; ++m) acc += eval(q, m) * local[m];
                at_gauss[q] = acc;
            }
            for (int q = 0; q < n_gauss; ++q) {
                const double diff = at_gauss[q] - field_value(xc + jac * xg[q], f);
                err2 += jac * wg[q] * diff * diff;
            }
        }
    }
    return std::sqrt(err2);
}

}  // namespace fluxjac
