#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hartogs/geometry.hpp"

namespace hartogs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double cross(Cx a, Cx b) { return a.real() * b.imag() - a.imag() * b.real(); }

Cx closest_on_segment(Cx p, Cx a, Cx b) {
    const Cx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return a;
    double s = ((p - a) * std::conj(ab)).real() / len2;
    s = std::clamp(s, 0.0, 1.0);
    return a + s * ab;
}

double polygon_diameter(const Polygon& p) {
    double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
    for (Cx v : p.vertices) {
        xlo = std::min(xlo, v.real());
        xhi = std::max(xhi, v.real());
        ylo = std::min(ylo, v.imag());
        yhi = std::max(yhi, v.imag());
    }
    return std::hypot(xhi - xlo, yhi - ylo);
}

struct EdgeHit {
    double dist;
    Cx point;
};

EdgeHit nearest_edge(const Polygon& p, Cx z) {
    EdgeHit best{kInf, z};
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Cx q = closest_on_segment(z, p.vertices[i], p.vertices[(i + 1) % n]);
        const double d = std::abs(z - q);
        if (d < best.dist) best = {d, q};
    }
    return best;
}

bool even_odd(const Polygon& p, Cx z) {
    bool inside = false;
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Cx vi = p.vertices[i];
        const Cx vj = p.vertices[j];
        if ((vi.imag() > z.imag()) != (vj.imag() > z.imag())) {
            const double x = vj.real() + (z.imag() - vj.imag()) * (vi.real() - vj.real()) /
                                             (vi.imag() - vj.imag());
            if (z.real() < x) inside = !inside;
        }
    }
    return inside;
}

bool segments_touch(Cx a, Cx b, Cx c, Cx d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_segment = [](Cx p, Cx q, Cx r) {
        return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
    };
    return (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
           (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
}

std::vector<std::string> polygon_issues(const Polygon& p) {
    std::vector<std::string> out;
    const std::size_t n = p.vertices.size();
    if (n < 3) {
        out.push_back("polygon needs at least 3 vertices");
        return out;
    }
    for (Cx v : p.vertices)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            out.push_back("polygon vertex is not finite");
            return out;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (p.vertices[i] == p.vertices[(i + 1) % n]) {
            out.push_back("polygon has a zero-length edge");
            return out;
        }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_touch(p.vertices[i], p.vertices[(i + 1) % n], p.vertices[j],
                               p.vertices[(j + 1) % n])) {
                out.push_back("polygon is not simple (edges " + std::to_string(i) + " and " +
                              std::to_string(j) + " intersect)");
                return out;
            }
        }
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) area2 += cross(p.vertices[i], p.vertices[(i + 1) % n]);
    if (area2 == 0.0) out.push_back("polygon is degenerate (zero area)");
    return out;
}

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::size_t Domain::dimension() const {
    if (const auto* p = std::get_if<ProductDomain>(&shape)) return p->factors.size();
    return 1;
}

bool Domain::bounded() const {
    return std::visit(overloaded{
                          [](const Plane&) { return false; },
                          [](const PuncturedPlane&) { return false; },
                          [](const Disk&) { return true; },
                          [](const Annulus&) { return true; },
                          [](const HalfPlane&) { return false; },
                          [](const Polygon&) { return true; },
                          [](const ProductDomain& p) {
                              return std::all_of(p.factors.begin(), p.factors.end(),
                                                 [](const Domain& f) { return f.bounded(); });
                          },
                      },
                      shape);
}

std::vector<std::string> domain_issues(const Domain& d) {
    return std::visit(
        overloaded{
            [](const Plane&) { return std::vector<std::string>{}; },
            [](const PuncturedPlane&) { return std::vector<std::string>{}; },
            [](const Disk& k) {
                std::vector<std::string> out;
                if (!finite(k.center)) out.push_back("disk center is not finite");
                if (!(k.radius > 0.0) || !std::isfinite(k.radius))
                    out.push_back("disk radius must be positive and finite");
                return out;
            },
            [](const Annulus& a) {
                std::vector<std::string> out;
                if (!finite(a.center)) out.push_back("annulus center is not finite");
                if (!(a.r_in > 0.0)) out.push_back("annulus inner radius must be positive");
                if (!(a.r_out > a.r_in) || !std::isfinite(a.r_out))
                    out.push_back("annulus outer radius must exceed the inner radius");
                return out;
            },
            [](const HalfPlane& h) {
                std::vector<std::string> out;
                if (!finite(h.base)) out.push_back("half plane base is not finite");
                if (!(std::abs(std::abs(h.direction) - 1.0) < 1e-9))
                    out.push_back("half plane direction must be a unit complex number");
                return out;
            },
            [](const Polygon& p) { return polygon_issues(p); },
            [](const ProductDomain& p) {
                std::vector<std::string> out;
                if (p.factors.empty()) out.push_back("product domain has no factors");
                for (std::size_t j = 0; j < p.factors.size(); ++j) {
                    if (p.factors[j].is_product()) {
                        out.push_back("product factor " + std::to_string(j) + " is itself a product");
                        continue;
                    }
                    for (auto& s : domain_issues(p.factors[j]))
                        out.push_back("factor " + std::to_string(j) + ": " + s);
                }
                return out;
            },
        },
        d.shape);
}

namespace {

Domain checked(Domain d) {
    auto issues = domain_issues(d);
    if (!issues.empty()) throw InvalidSpec(issues.front());
    return d;
}

}  // namespace

Domain make_plane() { return Domain{Plane{}}; }
Domain make_punctured_plane() { return Domain{PuncturedPlane{}}; }
Domain make_disk(Cx center, double radius) { return checked(Domain{Disk{center, radius}}); }
Domain make_annulus(Cx center, double r_in, double r_out) {
    return checked(Domain{Annulus{center, r_in, r_out}});
}
Domain make_half_plane(Cx base, Cx direction) {
    return checked(Domain{HalfPlane{base, direction}});
}
Domain make_polygon(std::vector<Cx> vertices) {
    return checked(Domain{Polygon{std::move(vertices)}});
}

Domain make_product(std::vector<Domain> factors) {
    ProductDomain p;
    for (auto& f : factors) {
        if (auto* inner = std::get_if<ProductDomain>(&f.shape)) {
            for (auto& g : inner->factors) p.factors.push_back(std::move(g));
        } else {
            p.factors.push_back(std::move(f));
        }
    }
    return checked(Domain{std::move(p)});
}

bool contains(const Domain& d, Cx z) {
    if (!finite(z)) return false;
    return std::visit(overloaded{
                          [](const Plane&) { return true; },
                          [&](const PuncturedPlane&) { return z != Cx{}; },
                          [&](const Disk& k) { return std::abs(z - k.center) < k.radius; },
                          [&](const Annulus& a) {
                              const double r = std::abs(z - a.center);
                              return r > a.r_in && r < a.r_out;
                          },
                          [&](const HalfPlane& h) {
                              return ((z - h.base) * std::conj(h.direction)).real() > 0.0;
                          },
                          [&](const Polygon& p) {
                              const double eps = p.collar_rel * polygon_diameter(p);
                              return nearest_edge(p, z).dist > eps && even_odd(p, z);
                          },
                          [](const ProductDomain&) -> bool {
                              throw DimensionMismatch("product domain needs one coordinate per factor");
                          },
                      },
                      d.shape);
}

bool contains(const Domain& d, std::span<const Cx> z) {
    if (const auto* p = std::get_if<ProductDomain>(&d.shape)) {
        if (z.size() != p->factors.size())
            throw DimensionMismatch("point has " + std::to_string(z.size()) +
                                    " coordinates, product domain has " +
                                    std::to_string(p->factors.size()) + " factors");
        for (std::size_t j = 0; j < z.size(); ++j)
            if (!contains(p->factors[j], z[j])) return false;
        return true;
    }
    if (z.size() != 1) throw DimensionMismatch("planar domain needs exactly one coordinate");
    return contains(d, z[0]);
}

double boundary_gap(const Domain& d, Cx z) {
    if (!contains(d, z)) throw OutsideDomain("point is outside the domain");
    return std::visit(overloaded{
                          [](const Plane&) { return kInf; },
                          [&](const PuncturedPlane&) { return std::abs(z); },
                          [&](const Disk& k) { return k.radius - std::abs(z - k.center); },
                          [&](const Annulus& a) {
                              const double r = std::abs(z - a.center);
                              return std::min(r - a.r_in, a.r_out - r);
                          },
                          [&](const HalfPlane& h) {
                              return ((z - h.base) * std::conj(h.direction)).real();
                          },
                          [&](const Polygon& p) { return nearest_edge(p, z).dist; },
                          [](const ProductDomain&) -> double {
                              throw DimensionMismatch("product domain needs one coordinate per factor");
                          },
                      },
                      d.shape);
}

double boundary_gap(const Domain& d, std::span<const Cx> z) {
    if (const auto* p = std::get_if<ProductDomain>(&d.shape)) {
        if (z.size() != p->factors.size())
            throw DimensionMismatch("point dimension does not match product domain");
        double gap = kInf;
        for (std::size_t j = 0; j < z.size(); ++j) gap = std::min(gap, boundary_gap(p->factors[j], z[j]));
        return gap;
    }
    if (z.size() != 1) throw DimensionMismatch("planar domain needs exactly one coordinate");
    return boundary_gap(d, z[0]);
}

std::optional<Cx> nearest_complement_point(const Domain& d, Cx z) {
    return std::visit(
        overloaded{
            [](const Plane&) -> std::optional<Cx> { return std::nullopt; },
            [](const PuncturedPlane&) -> std::optional<Cx> { return Cx{}; },
            [&](const Disk& k) -> std::optional<Cx> {
                const Cx v = z - k.center;
                const double r = std::abs(v);
                return k.center + (r > 0 ? v / r : Cx{1.0, 0.0}) * k.radius;
            },
            [&](const Annulus& a) -> std::optional<Cx> {
                const Cx v = z - a.center;
                const double r = std::abs(v);
                const Cx u = r > 0 ? v / r : Cx{1.0, 0.0};
                return (r - a.r_in <= a.r_out - r) ? a.center + u * a.r_in : a.center + u * a.r_out;
            },
            [&](const HalfPlane& h) -> std::optional<Cx> {
                const double s = ((z - h.base) * std::conj(h.direction)).real();
                return z - s * h.direction;
            },
            [&](const Polygon& p) -> std::optional<Cx> { return nearest_edge(p, z).point; },
            [](const ProductDomain&) -> std::optional<Cx> {
                throw DimensionMismatch("nearest_complement_point needs a planar domain");
            },
        },
        d.shape);
}

std::pair<Cx, Cx> bounding_box(const Domain& d) {
    return std::visit(
        overloaded{
            [](const Disk& k) {
                return std::pair{k.center - Cx{k.radius, k.radius}, k.center + Cx{k.radius, k.radius}};
            },
            [](const Annulus& a) {
                return std::pair{a.center - Cx{a.r_out, a.r_out}, a.center + Cx{a.r_out, a.r_out}};
            },
            [](const Polygon& p) {
                double xlo = kInf, xhi = -kInf, ylo = kInf, yhi = -kInf;
                for (Cx v : p.vertices) {
                    xlo = std::min(xlo, v.real());
                    xhi = std::max(xhi, v.real());
                    ylo = std::min(ylo, v.imag());
                    yhi = std::max(yhi, v.imag());
                }
                return std::pair{Cx{xlo, ylo}, Cx{xhi, yhi}};
            },
            [](const auto&) -> std::pair<Cx, Cx> {
                throw PreconditionError("bounding box requested for an unbounded or product domain");
            },
        },
        d.shape);
}

std::vector<Cx> interior_samples(const Domain& d, int n, double window) {
    if (d.is_product()) throw DimensionMismatch("interior_samples needs a planar domain");
    Cx lo, hi;
    if (d.bounded()) {
        std::tie(lo, hi) = bounding_box(d);
    } else {
        Cx c{};
        if (const auto* h = std::get_if<HalfPlane>(&d.shape)) c = h->base;
        lo = c - Cx{window, window};
        hi = c + Cx{window, window};
    }
    std::vector<Cx> out;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Cx z{lo.real() + (i + 0.5) * (hi.real() - lo.real()) / n,
                       lo.imag() + (j + 0.5) * (hi.imag() - lo.imag()) / n};
            if (contains(d, z)) out.push_back(z);
        }
    }
    return out;
}

std::vector<Cx> boundary_samples(const Domain& d, double spacing) {
    if (!(spacing > 0.0)) throw PreconditionError("boundary spacing must be positive");
    auto circle = [&](Cx c, double r, std::vector<Cx>& out) {
        const int n = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * r / spacing)));
        for (int i = 0; i < n; ++i) out.push_back(c + std::polar(r, 2.0 * std::numbers::pi * i / n));
    };
    std::vector<Cx> out;
    std::visit(overloaded{
                   [&](const Disk& k) { circle(k.center, k.radius, out); },
                   [&](const Annulus& a) {
                       circle(a.center, a.r_in, out);
                       circle(a.center, a.r_out, out);
                   },
                   [&](const Polygon& p) {
                       const std::size_t n = p.vertices.size();
                       for (std::size_t i = 0; i < n; ++i) {
                           const Cx a = p.vertices[i];
                           const Cx b = p.vertices[(i + 1) % n];
                           const int m = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / spacing)));
                           for (int s = 0; s < m; ++s) out.push_back(a + (b - a) * (double(s) / m));
                       }
                   },
                   [](const auto&) {
                       throw PreconditionError("boundary samples need a bounded planar domain");
                   },
               },
               d.shape);
    return out;
}

std::string describe(const Domain& d) {
    std::ostringstream os;
    auto cx = [&](Cx z) { os << "(" << z.real() << "," << z.imag() << ")"; };
    std::visit(overloaded{
                   [&](const Plane&) { os << "C"; },
                   [&](const PuncturedPlane&) { os << "C*"; },
                   [&](const Disk& k) {
                       os << "Disk";
                       cx(k.center);
                       os << " r=" << k.radius;
                   },
                   [&](const Annulus& a) {
                       os << "Annulus";
                       cx(a.center);
                       os << " " << a.r_in << ".." << a.r_out;
                   },
                   [&](const HalfPlane& h) {
                       os << "HalfPlane base=";
                       cx(h.base);
                       os << " dir=";
                       cx(h.direction);
                   },
                   [&](const Polygon& p) { os << "Polygon[" << p.vertices.size() << "]"; },
                   [&](const ProductDomain& p) {
                       for (std::size_t j = 0; j < p.factors.size(); ++j)
                           os << (j ? " x " : "") << describe(p.factors[j]);
                   },
               },
               d.shape);
    return os.str();
}

}  // namespace hartogs
