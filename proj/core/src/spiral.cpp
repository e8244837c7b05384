#include "nric/spiral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "nric/constants.hpp"
#include "nric/errors.hpp"

namespace nric {
namespace {

constexpr int kCircleFacets = 180;
constexpr int kMinPiecesPerTurn = 96;

ShapeCoefficients lerp_shape(const ShapeCoefficients& a, const ShapeCoefficients& b, double x, int seg) {
    const double xa = a.cos_factor(), xb = b.cos_factor();
    const double s = (x - xa) / (xb - xa);
    ShapeCoefficients out;
    out.name = "polygon:" + std::to_string(seg);
    out.c1 = a.c1 + s * (b.c1 - a.c1);
    out.c2 = a.c2 + s * (b.c2 - a.c2);
    out.c3 = a.c3 + s * (b.c3 - a.c3);
    out.c4 = a.c4 + s * (b.c4 - a.c4);
    out.seg = seg;
    return out;
}

struct Piece {
    double mx, my;  // midpoint
    double tx, ty;  // segment vector
};

// One turn as a chain of straight pieces at circumradius `radius`.
std::vector<Piece> turn_pieces(const ShapeCoefficients& shape, double radius) {
    const int sides = shape.seg == 0 ? kCircleFacets : shape.seg;
    const int sub = std::max(1, (kMinPiecesPerTurn + sides - 1) / sides);
    std::vector<Piece> out;
    out.reserve(static_cast<std::size_t>(sides * sub));
    for (int j = 0; j < sides; ++j) {
        const double a0 = kPi / sides + 2.0 * kPi * j / sides;
        const double a1 = a0 + 2.0 * kPi / sides;
        const double x0 = radius * std::cos(a0), y0 = radius * std::sin(a0);
        const double x1 = radius * std::cos(a1), y1 = radius * std::sin(a1);
        for (int s = 0; s < sub; ++s) {
            const double u0 = static_cast<double>(s) / sub, u1 = static_cast<double>(s + 1) / sub;
            const double px0 = x0 + u0 * (x1 - x0), py0 = y0 + u0 * (y1 - y0);
            const double px1 = x0 + u1 * (x1 - x0), py1 = y0 + u1 * (y1 - y0);
            out.push_back({0.5 * (px0 + px1), 0.5 * (py0 + py1), px1 - px0, py1 - py0});
        }
    }
    return out;
}

double turn_radius(const SpiralGeometry& g, int i) { return g.r + (i + 0.5) * g.dr; }

}  // namespace

double ShapeCoefficients::cos_factor() const { return seg == 0 ? 1.0 : std::cos(kPi / seg); }

ShapeCoefficients ShapeCoefficients::square() { return {"square", 1.27, 2.07, 0.18, 0.13, 4}; }
ShapeCoefficients ShapeCoefficients::hexagonal() { return {"hexagonal", 1.09, 2.23, 0.00, 0.17, 6}; }
ShapeCoefficients ShapeCoefficients::octagonal() { return {"octagonal", 1.07, 2.29, 0.00, 0.19, 8}; }
ShapeCoefficients ShapeCoefficients::circular() { return {"circular", 1.00, 2.46, 0.00, 0.20, 0}; }

ShapeCoefficients ShapeCoefficients::polygon(int seg) {
    if (seg < 3) throw ValidationError("polygon order must be >= 3");
    switch (seg) {
        case 4: return square();
        case 6: return hexagonal();
        case 8: return octagonal();
        default: break;
    }
    const double x = std::cos(kPi / seg);
    const std::array<ShapeCoefficients, 4> table{square(), hexagonal(), octagonal(), circular()};
    std::size_t i = 0;
    while (i + 2 < table.size() && x > table[i + 1].cos_factor()) ++i;
    auto out = lerp_shape(table[i], table[i + 1], x, seg);
    if (!(out.c1 > 0.0) || !(out.c2 > 0.0)) throw ValidationError("polygon order out of range");
    return out;
}

ShapeCoefficients ShapeCoefficients::by_name(const std::string& name) {
    if (name == "square") return square();
    if (name == "hexagonal") return hexagonal();
    if (name == "octagonal") return octagonal();
    if (name == "circular") return circular();
    if (name.rfind("polygon:", 0) == 0) {
        try {
            return polygon(std::stoi(name.substr(8)));
        } catch (const std::logic_error&) {
            throw ValidationError("bad polygon order in shape '" + name + "'");
        }
    }
    throw ValidationError("unknown coil shape '" + name + "'");
}

SpiralGeometry SpiralGeometry::make(const ShapeCoefficients& shape, int n, double r, double dr,
                                    double w, double t) {
    SpiralGeometry g;
    g.shape = shape;
    g.n = n;
    g.r = r;
    g.dr = dr;
    g.w = w;
    g.t = t;
    g.d_avg = avg_diameter(g);
    g.area = coil_area(g);
    g.phi = fill_ratio(g);
    g.validate();
    return g;
}

void SpiralGeometry::validate() const {
    if (n < 1) throw ValidationError("spiral: turns must be >= 1");
    if (!(w > 0.0) || !(r > 0.0) || !(t > 0.0)) throw ValidationError("spiral: w, r, t must be positive");
    if (!(dr >= w)) throw ValidationError("spiral: turns overlap (dr < w)");
    if (!(shape.c1 > 0.0) || !(shape.c2 > 0.0)) throw ValidationError("spiral: c1, c2 must be positive");
    if (!(fill_ratio(*this) > 0.0)) throw ValidationError("spiral: fill ratio must be positive");
}

double avg_diameter(const SpiralGeometry& g) {
    return (2.0 * g.r + g.n * g.dr) * g.shape.cos_factor();
}

double coil_area(const SpiralGeometry& g) {
    const double edge = g.w + 2.0 * (g.r + g.n * g.dr) * g.shape.cos_factor();
    return edge * edge;
}

double fill_ratio(const SpiralGeometry& g) {
    return std::sqrt(coil_area(g)) / avg_diameter(g) - 1.0;
}

double inductance(const SpiralGeometry& g) {
    const double phi = fill_ratio(g);
    if (!(phi > 0.0)) throw ValidationError("inductance: fill ratio must be positive");
    const auto& c = g.shape;
    const double d = avg_diameter(g);
    return 0.5 * c.c1 * kMu0 * g.n * g.n * d *
           (std::log(c.c2 / phi) + c.c3 * phi + c.c4 * phi * phi);
}

void FabConstraints::validate() const {
    if (!(min_trace_width > 0.0) || !(min_spacing > 0.0) || !(max_area > 0.0) ||
        !(substrate_thickness > 0.0)) {
        throw ValidationError("fabrication constraints must all be positive");
    }
}

SynthesisResult synthesize(double l_target, const FabConstraints& fab, const ShapeCoefficients& shape,
                           const SynthesisGrid& grid) {
    if (!(l_target > 0.0)) throw ValidationError("synthesize: target inductance must be positive");
    fab.validate();
    if (!(grid.step > 0.0) || !(grid.r_step > 0.0) || grid.n_min < 1 || grid.n_max < grid.n_min) {
        throw ValidationError("synthesize: bad search grid");
    }
    if (!(grid.phi_min >= 0.0) || !(grid.phi_max > grid.phi_min)) {
        throw ValidationError("synthesize: bad fill-ratio window");
    }

    const double cf = shape.cos_factor();
    SynthesisResult result;
    double best_err = std::numeric_limits<double>::infinity();
    double best_l = 0.0;
    double smallest_area = std::numeric_limits<double>::infinity();
    std::size_t outside_window = 0;

    const int w_count = static_cast<int>(std::floor((grid.w_max - fab.min_trace_width) / grid.step + 1e-9)) + 1;
    for (int n = grid.n_min; n <= grid.n_max; ++n) {
        for (int iw = 0; iw < std::max(w_count, 1); ++iw) {
            const double w = fab.min_trace_width + iw * grid.step;
            const double s_max = std::max(grid.max_spacing_ratio * w, fab.min_spacing);
            for (int is = 0;; ++is) {
                const double s = fab.min_spacing + is * grid.step;
                if (s > s_max + 1e-12) break;
                const double dr = w + s;
                for (int ir = 1;; ++ir) {
                    const double r = ir * grid.r_step;
                    const double edge = w + 2.0 * (r + n * dr) * cf;
                    const double area = edge * edge;
                    smallest_area = std::min(smallest_area, area);
                    if (area > fab.max_area) break;
                    if (2.0 * r * cf - w <= 0.0) continue;  // no inner opening
                    const auto g = SpiralGeometry::make(shape, n, r, dr, w, grid.trace_thickness);
                    const double l = inductance(g);
                    const double err = std::abs(l - l_target) / l_target;
                    const bool in_window = g.phi >= grid.phi_min && g.phi <= grid.phi_max;
                    if (err <= grid.tolerance && !in_window) {
                        ++outside_window;
                    } else if (err <= grid.tolerance) {
                        result.candidates.push_back(g);
                    } else if (err < best_err) {
                        best_err = err;
                        best_l = l;
                    }
                }
            }
        }
    }

    std::stable_sort(result.candidates.begin(), result.candidates.end(),
                     [l_target](const SpiralGeometry& a, const SpiralGeometry& b) {
                         if (a.area != b.area) return a.area > b.area;
                         const double ea = std::abs(inductance(a) - l_target);
                         const double eb = std::abs(inductance(b) - l_target);
                         if (ea != eb) return ea < eb;
                         return std::tie(a.n, a.w, a.dr, a.r) < std::tie(b.n, b.w, b.dr, b.r);
                     });

    if (result.candidates.empty()) {
        std::ostringstream os;
        if (outside_window > 0) {
            os << outside_window << " geometries reach the target but have fill ratio outside ["
               << grid.phi_min << ", " << grid.phi_max << "]";
        } else if (std::isfinite(best_err)) {
            os << "closest L = " << best_l << " H (" << best_err * 100.0 << " % from target)";
        } else {
            os << "smallest reachable footprint " << smallest_area << " m^2 exceeds max_area "
               << fab.max_area << " m^2";
        }
        result.nearest_miss = os.str();
    }
    return result;
}

double skin_depth(double f, double resistivity) {
    if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(resistivity / (kPi * f * kMu0));
}

double trace_length(const SpiralGeometry& g) {
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double rad = turn_radius(g, i);
        total += g.shape.seg == 0 ? 2.0 * kPi * rad
                                  : 2.0 * g.shape.seg * rad * std::sin(kPi / g.shape.seg);
    }
    return total;
}

double ac_resistance(const SpiralGeometry& g, double f, double resistivity) {
    if (!(f >= 0.0)) throw ValidationError("ac_resistance: frequency must be >= 0");
    double t_eff = g.t;
    if (f > 0.0) {
        const double delta = skin_depth(f, resistivity);
        t_eff = delta * -std::expm1(-g.t / delta);
    }
    return resistivity * trace_length(g) / (g.w * t_eff);
}

double mutual_inductance(const SpiralGeometry& tx, const SpiralGeometry& rx, double distance) {
    if (!(distance > 0.0)) throw ValidationError("mutual_inductance: distance must be positive");
    std::vector<std::vector<Piece>> rx_turns;
    rx_turns.reserve(static_cast<std::size_t>(rx.n));
    for (int j = 0; j < rx.n; ++j) rx_turns.push_back(turn_pieces(rx.shape, turn_radius(rx, j)));

    const double d2 = distance * distance;
    double sum = 0.0;
    for (int i = 0; i < tx.n; ++i) {
        const auto a = turn_pieces(tx.shape, turn_radius(tx, i));
        for (const auto& b : rx_turns) {
            for (const auto& pa : a) {
                for (const auto& pb : b) {
                    const double dx = pa.mx - pb.mx, dy = pa.my - pb.my;
                    sum += (pa.tx * pb.tx + pa.ty * pb.ty) / std::sqrt(dx * dx + dy * dy + d2);
                }
            }
        }
    }
    return kMu0 / (4.0 * kPi) * sum;
}

double estimate_k(const SpiralGeometry& tx, const SpiralGeometry& rx, double distance) {
    const double m = mutual_inductance(tx, rx, distance);
    const double k = m / std::sqrt(inductance(tx) * inductance(rx));
    return std::clamp(k, 0.0, std::nextafter(1.0, 0.0));
}

}  // namespace nric
