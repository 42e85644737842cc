#include <cmath>
#include <sstream>

#include "hartogs/geometry.hpp"

namespace hartogs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// z^k for integer k by repeated squaring; exact for small integer inputs.
Cx ipow(Cx z, int k) {
    if (k < 0) return Cx{1.0, 0.0} / ipow(z, -k);
    Cx result{1.0, 0.0};
    Cx base = z;
    unsigned e = static_cast<unsigned>(k);
    while (e) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

}  // namespace

std::size_t Frame::dimension() const {
    if (const auto* p = std::get_if<SplitProduct>(&kind)) return p->factors.size();
    return 1;
}

Frame make_const_one() { return Frame{ConstOne{}}; }
Frame make_exp() { return Frame{ExpFrame{}}; }

Frame make_monomial(int k) {
    if (k == -1) throw InvalidSpec("monomial frame with k = -1 is the dz/z frame; use inv_z");
    return Frame{Monomial{k}};
}

Frame make_inv_z() { return Frame{InvZ{}}; }

Frame make_scaled(Cx c, Frame inner) {
    if (c == Cx{} || !std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InvalidSpec("scale factor must be finite and nonzero");
    if (inner.is_product()) throw InvalidSpec("cannot scale a split product frame; scale its factors");
    return Frame{Scaled{c, std::make_shared<const Frame>(std::move(inner))}};
}

Frame make_split_product(std::vector<Frame> factors) {
    if (factors.empty()) throw InvalidSpec("split product frame has no factors");
    SplitProduct p;
    for (auto& f : factors) {
        if (auto* inner = std::get_if<SplitProduct>(&f.kind)) {
            for (auto& g : inner->factors) p.factors.push_back(std::move(g));
        } else {
            p.factors.push_back(std::move(f));
        }
    }
    return Frame{std::move(p)};
}

bool frame_excludes(const Frame& f, Cx z) {
    return std::visit(overloaded{
                          [](const ConstOne&) { return false; },
                          [](const ExpFrame&) { return false; },
                          [&](const Monomial& m) { return m.k != 0 && z == Cx{}; },
                          [&](const InvZ&) { return z == Cx{}; },
                          [&](const Scaled& s) { return frame_excludes(*s.inner, z); },
                          [](const SplitProduct&) -> bool {
                              throw DimensionMismatch("split product frame needs one coordinate per factor");
                          },
                      },
                      f.kind);
}

FrameJet frame_jet(const Frame& f, Cx z) {
    if (frame_excludes(f, z)) throw EvaluationError("frame is not defined or vanishes at this point");
    return std::visit(overloaded{
                          [](const ConstOne&) { return FrameJet{{1.0, 0.0}, {}, {}}; },
                          [&](const ExpFrame&) {
                              const Cx e = std::exp(z);
                              return FrameJet{e, e, e};
                          },
                          [&](const Monomial& m) {
                              const double k = m.k;
                              if (m.k == 0) return FrameJet{{1.0, 0.0}, {}, {}};
                              return FrameJet{ipow(z, m.k), k * ipow(z, m.k - 1),
                                              k * (k - 1.0) * ipow(z, m.k - 2)};
                          },
                          [&](const InvZ&) {
                              const Cx w = Cx{1.0, 0.0} / z;
                              return FrameJet{w, -w * w, 2.0 * w * w * w};
                          },
                          [&](const Scaled& s) {
                              const FrameJet in = frame_jet(*s.inner, z);
                              return FrameJet{s.c * in.g, s.c * in.dg, s.c * in.d2g};
                          },
                          [](const SplitProduct&) -> FrameJet {
                              throw DimensionMismatch("split product frame needs one coordinate per factor");
                          },
                      },
                      f.kind);
}

Cx frame_eval(const Frame& f, Cx z) {
    if (frame_excludes(f, z)) throw EvaluationError("frame is not defined or vanishes at this point");
    return std::visit(overloaded{
                          [](const ConstOne&) { return Cx{1.0, 0.0}; },
                          [&](const ExpFrame&) { return std::exp(z); },
                          [&](const Monomial& m) { return ipow(z, m.k); },
                          [&](const InvZ&) { return Cx{1.0, 0.0} / z; },
                          [&](const Scaled& s) { return s.c * frame_eval(*s.inner, z); },
                          [](const SplitProduct&) -> Cx {
                              throw DimensionMismatch("split product frame needs one coordinate per factor");
                          },
                      },
                      f.kind);
}

bool frame_needs_puncture(const Frame& f) {
    return std::visit(overloaded{
                          [](const ConstOne&) { return false; },
                          [](const ExpFrame&) { return false; },
                          [](const Monomial& m) { return m.k != 0; },
                          [](const InvZ&) { return true; },
                          [](const Scaled& s) { return frame_needs_puncture(*s.inner); },
                          [](const SplitProduct& p) {
                              for (const auto& g : p.factors)
                                  if (frame_needs_puncture(g)) return true;
                              return false;
                          },
                      },
                      f.kind);
}

std::string describe(const Frame& f) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const ConstOne&) { os << "dz"; },
                   [&](const ExpFrame&) { os << "e^z dz"; },
                   [&](const Monomial& m) { os << "z^" << m.k << " dz"; },
                   [&](const InvZ&) { os << "dz/z"; },
                   [&](const Scaled& s) {
                       os << "(" << s.c.real() << "," << s.c.imag() << ")*" << describe(*s.inner);
                   },
                   [&](const SplitProduct& p) {
                       os << "split(";
                       for (std::size_t j = 0; j < p.factors.size(); ++j)
                           os << (j ? ", " : "") << describe(p.factors[j]);
                       os << ")";
                   },
               },
               f.kind);
    return os.str();
}

}  // namespace hartogs
