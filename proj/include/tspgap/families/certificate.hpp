#ifndef TSPGAP_FAMILIES_CERTIFICATE_HPP
#define TSPGAP_FAMILIES_CERTIFICATE_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/families/ijk.hpp"
#include "tspgap/families/pseudo_tour.hpp"

namespace tspgap::families
{

/// Raised when the convex-combination identity does not hold.
class CertificateError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

struct LambdaCertificate {
    std::vector<PseudoTour> tours;
    std::vector<double> lambda; // aligned with tours
    double rho = 0.0;
    double multiplier = 0.0; // 1 + rho
    double sum_lambda = 0.0;
    double max_residual = 0.0; // max over edges of |sum lambda chi - (1+rho) x|
};

inline double lambda_of(const PseudoTour& t, IJK p)
{
    const double D = 3.0 + 2.0 * metric_sum(p);
    switch (t.kind) {
    case PseudoTourKind::up: return 1.0 / ((p.k + 1) * D);
    case PseudoTourKind::mid: return 1.0 / ((p.j + 1) * D);
    case PseudoTourKind::down: return 1.0 / ((p.i + 1) * D);
    case PseudoTourKind::nw:
    case PseudoTourKind::ne: return (1.0 / (p.k + 1)) / D;
    case PseudoTourKind::left:
    case PseudoTourKind::right: return (1.0 / (p.j + 1)) / D;
    case PseudoTourKind::sw:
    case PseudoTourKind::se: return (1.0 / (p.i + 1)) / D;
    }
    return 0.0;
}

/// Computes the coefficients and checks sum(lambda) = 1 and
/// sum(lambda_T chi^T) = (1 + rho) x_{i,j,k} on every edge, both within `tol`.
inline LambdaCertificate lambda_certificate(IJK p, double tol = 1e-12)
{
    LambdaCertificate c;
    c.tours = pseudo_tours(p);
    c.rho = 1.0 / (3.0 + 2.0 * metric_sum(p));
    c.multiplier = 1.0 + c.rho;
    std::map<Edge, double> combo;
    for (const auto& t : c.tours) {
        const double l = lambda_of(t, p);
        c.lambda.push_back(l);
        c.sum_lambda += l;
        for (const auto& [e, m] : t.edges) combo[e] += l * m;
    }
    const auto x = fractional_xijk(p);
    for (const auto& [e, w] : x.weights()) combo.try_emplace(e, 0.0);
    for (const auto& [e, v] : combo) {
        c.max_residual = std::max(c.max_residual, std::abs(v - c.multiplier * x.get(e.u, e.v)));
    }
    if (std::abs(c.sum_lambda - 1.0) > tol) throw CertificateError("lambda coefficients do not sum to one");
    if (c.max_residual > tol) throw CertificateError("convex combination differs from (1+rho) x");
    return c;
}

} // namespace tspgap::families

#endif
