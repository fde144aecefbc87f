#include "inbench/polygon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace inbench {

double Vec2::norm() const { return std::sqrt(x * x + y * y); }

double signed_area(const Polygon& p) {
    double a = 0.0;
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& u = p[i];
        const Vec2& v = p[(i + 1) % n];
        a += u.cross(v);
    }
    return 0.5 * a;
}

Vec2 polygon_centroid(const Polygon& p) {
    const AreaMoment am = area_moment(p);
    if (std::abs(am.area) < 1e-18) return {0.0, 0.0};
    return {am.moment.x / am.area, am.moment.y / am.area};
}

bool is_ccw(const Polygon& p) { return signed_area(p) > 0.0; }

bool is_convex(const Polygon& p) {
    const size_t n = p.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 e1 = p[(i + 1) % n] - p[i];
        const Vec2 e2 = p[(i + 2) % n] - p[(i + 1) % n];
        if (e1.cross(e2) < -1e-12) return false;
    }
    return true;
}

bool is_simple(const Polygon& p) {
    const size_t n = p.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        if ((p[(i + 1) % n] - p[i]).norm() < 1e-12) return false;
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            // skip adjacent edges (shared vertex)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return false;
        }
    }
    return true;
}

Polygon transformed(const Polygon& p, const Vec2& translation, double rotation) {
    Polygon out;
    out.reserve(p.size());
    const double c = std::cos(rotation), s = std::sin(rotation);
    for (const Vec2& v : p) {
        out.push_back({c * v.x - s * v.y + translation.x, s * v.x + c * v.y + translation.y});
    }
    return out;
}

bool point_in_polygon(const Vec2& pt, const Polygon& poly) {
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > pt.y) != (b.y > pt.y)) {
            const double xint = (b.x - a.x) * (pt.y - a.y) / (b.y - a.y) + a.x;
            if (pt.x < xint) inside = !inside;
        }
    }
    return inside;
}

double segment_point_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

static double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b - a).cross(c - a);
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = orient(c, d, a);
    const double d2 = orient(c, d, b);
    const double d3 = orient(a, b, c);
    const double d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
               std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
    };
    if (d1 == 0 && on_segment(c, a, d)) return true;
    if (d2 == 0 && on_segment(c, b, d)) return true;
    if (d3 == 0 && on_segment(a, c, b)) return true;
    if (d4 == 0 && on_segment(a, d, b)) return true;
    return false;
}

double boundary_distance(const Polygon& a, const Polygon& b) {
    double best = std::numeric_limits<double>::infinity();
    const size_t na = a.size(), nb = b.size();
    for (size_t i = 0; i < na; ++i) {
        for (size_t j = 0; j < nb; ++j) {
            best = std::min(best, segment_point_distance(b[j], b[(j + 1) % nb], a[i]));
            best = std::min(best, segment_point_distance(a[i], a[(i + 1) % na], b[j]));
        }
    }
    return best;
}

bool polygon_inside(const Polygon& inner, const Polygon& outer) {
    for (const Vec2& v : inner) {
        if (!point_in_polygon(v, outer)) return false;
    }
    const size_t ni = inner.size(), no = outer.size();
    for (size_t i = 0; i < ni; ++i) {
        for (size_t j = 0; j < no; ++j) {
            if (segments_intersect(inner[i], inner[(i + 1) % ni], outer[j], outer[(j + 1) % no]))
                return false;
        }
    }
    return true;
}

double containment_margin(const Polygon& inner, const Polygon& outer) {
    if (polygon_inside(inner, outer)) return boundary_distance(inner, outer);
    double worst = 0.0;
    const size_t no = outer.size();
    for (const Vec2& v : inner) {
        if (point_in_polygon(v, outer)) continue;
        double d = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < no; ++j) {
            d = std::min(d, segment_point_distance(outer[j], outer[(j + 1) % no], v));
        }
        worst = std::max(worst, d);
    }
    // Edges may cross with all vertices inside (non-convex outer); report a
    // small violation so callers still see "not contained".
    if (worst == 0.0) worst = 1e-9;
    return -worst;
}

bool deepest_violation(const Polygon& inner, const Polygon& outer, Violation& out) {
    double worst = 0.0;
    bool found = false;
    const size_t no = outer.size();
    for (const Vec2& v : inner) {
        if (point_in_polygon(v, outer)) continue;
        double d = std::numeric_limits<double>::infinity();
        Vec2 closest;
        for (size_t j = 0; j < no; ++j) {
            const Vec2& a = outer[j];
            const Vec2& b = outer[(j + 1) % no];
            const Vec2 ab = b - a;
            const double len2 = ab.dot(ab);
            double t = len2 > 0.0 ? (v - a).dot(ab) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const Vec2 proj = a + ab * t;
            const double dist = (v - proj).norm();
            if (dist < d) {
                d = dist;
                closest = proj;
            }
        }
        if (d > worst) {
            worst = d;
            out.point = v;
            const Vec2 dir = closest - v;
            const double n = dir.norm();
            out.push = n > 0.0 ? dir * (1.0 / n) : Vec2{0.0, 0.0};
            out.depth = d;
            found = true;
        }
    }
    return found;
}

Vec2 support_point(const Polygon& p, const Vec2& dir) {
    Vec2 best = p.front();
    double best_dot = best.dot(dir);
    for (const Vec2& v : p) {
        const double d = v.dot(dir);
        if (d > best_dot) {
            best_dot = d;
            best = v;
        }
    }
    return best;
}

Polygon clip_convex(const Polygon& subject, const Polygon& convex_clip) {
    Polygon out = subject;
    const size_t nc = convex_clip.size();
    for (size_t e = 0; e < nc && !out.empty(); ++e) {
        const Vec2& a = convex_clip[e];
        const Vec2& b = convex_clip[(e + 1) % nc];
        const Vec2 edge = b - a;
        Polygon in;
        in.swap(out);
        const size_t n = in.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2& cur = in[i];
            const Vec2& nxt = in[(i + 1) % n];
            const double dc = edge.cross(cur - a);
            const double dn = edge.cross(nxt - a);
            if (dc >= 0.0) out.push_back(cur);
            if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
                const double t = dc / (dc - dn);
                out.push_back(cur + (nxt - cur) * t);
            }
        }
    }
    return out;
}

std::vector<std::array<size_t, 3>> triangulate(const Polygon& p) {
    std::vector<std::array<size_t, 3>> tris;
    const size_t n = p.size();
    if (n < 3) return tris;
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;

    auto is_ear = [&](size_t ia, size_t ib, size_t ic) {
        const Vec2& a = p[ia];
        const Vec2& b = p[ib];
        const Vec2& c = p[ic];
        if (orient(a, b, c) <= 1e-18) return false; // reflex or degenerate
        for (size_t k : idx) {
            if (k == ia || k == ib || k == ic) continue;
            const Vec2& q = p[k];
            if (orient(a, b, q) >= 0 && orient(b, c, q) >= 0 && orient(c, a, q) >= 0)
                return false;
        }
        return true;
    };

    size_t guard = 0;
    while (idx.size() > 3 && guard < 10000) {
        bool clipped = false;
        for (size_t i = 0; i < idx.size(); ++i) {
            const size_t ia = idx[(i + idx.size() - 1) % idx.size()];
            const size_t ib = idx[i];
            const size_t ic = idx[(i + 1) % idx.size()];
            if (is_ear(ia, ib, ic)) {
                tris.push_back({ia, ib, ic});
                idx.erase(idx.begin() + static_cast<long>(i));
                clipped = true;
                break;
            }
        }
        if (!clipped) break; // degenerate input; fall through with remainder fan
        ++guard;
    }
    if (idx.size() == 3) tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

AreaMoment area_moment(const Polygon& p) {
    AreaMoment am;
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& u = p[i];
        const Vec2& v = p[(i + 1) % n];
        const double c = u.cross(v);
        am.area += c;
        am.moment.x += (u.x + v.x) * c;
        am.moment.y += (u.y + v.y) * c;
    }
    am.area *= 0.5;
    am.moment.x /= 6.0;
    am.moment.y /= 6.0;
    return am;
}

AreaMoment intersection_moment(const Polygon& a, const Polygon& b) {
    AreaMoment total;
    if (is_convex(b)) {
        const Polygon clipped = clip_convex(a, b);
        if (clipped.size() >= 3) total = area_moment(clipped);
        return total;
    }
    for (const auto& t : triangulate(b)) {
        const Polygon tri{b[t[0]], b[t[1]], b[t[2]]};
        const Polygon clipped = clip_convex(a, tri);
        if (clipped.size() < 3) continue;
        const AreaMoment am = area_moment(clipped);
        total.area += am.area;
        total.moment.x += am.moment.x;
        total.moment.y += am.moment.y;
    }
    return total;
}

Polygon offset_polygon(const Polygon& p, double d) {
    const size_t n = p.size();
    Polygon out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2& prev = p[(i + n - 1) % n];
        const Vec2& cur = p[i];
        const Vec2& next = p[(i + 1) % n];
        // outward normals of the adjacent edges (CCW polygon: outward = right side)
        auto edge_normal = [](const Vec2& a, const Vec2& b) {
            const Vec2 e = b - a;
            const double len = e.norm();
            return Vec2{e.y / len, -e.x / len};
        };
        const Vec2 n1 = edge_normal(prev, cur);
        const Vec2 n2 = edge_normal(cur, next);
        // miter: intersection of the two offset edges
        const Vec2 sum = n1 + n2;
        const double denom = 1.0 + n1.dot(n2);
        out.push_back(cur + sum * (d / denom));
    }
    return out;
}

} // namespace inbench
