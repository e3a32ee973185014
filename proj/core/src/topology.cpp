#include "twocenter/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace twocenter {

namespace {

struct SegmentIndex {
    // Uniform grid over segment bounding boxes; cells map to segment ids.
    double cell = 1.0;
    std::unordered_map<std::int64_t, std::vector<int>> cells;

    static std::int64_t key(int ix, int iy) {
        return (static_cast<std::int64_t>(ix) << 32) ^ (static_cast<std::int64_t>(iy) & 0xffffffffLL);
    }

    void build(const ClosedCurve& curve) {
        const int n = static_cast<int>(curve.segment_count());
        double total = 0;
        for (int i = 0; i < n; ++i) total += dist(curve.seg_a(i), curve.seg_b(i));
        cell = std::max(2.0 * total / n, 1e-12);
        for (int i = 0; i < n; ++i) insert_box(curve.seg_a(i), curve.seg_b(i), i);
    }

    void insert_box(Vec2 a, Vec2 b, int id) {
        const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) / cell));
        const int x1 = static_cast<int>(std::floor(std::max(a.x, b.x) / cell));
        const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) / cell));
        const int y1 = static_cast<int>(std::floor(std::max(a.y, b.y) / cell));
        for (int ix = x0; ix <= x1; ++ix)
            for (int iy = y0; iy <= y1; ++iy) cells[key(ix, iy)].push_back(id);
    }

    template <class Fn>
    void visit_box(Vec2 a, Vec2 b, Fn&& fn) const {
        const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) / cell));
        const int x1 = static_cast<int>(std::floor(std::max(a.x, b.x) / cell));
        const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) / cell));
        const int y1 = static_cast<int>(std::floor(std::max(a.y, b.y) / cell));
        for (int ix = x0; ix <= x1; ++ix)
            for (int iy = y0; iy <= y1; ++iy) {
                const auto it = cells.find(key(ix, iy));
                if (it == cells.end()) continue;
                for (int id : it->second) fn(id);
            }
    }
};

struct Hit {
    Vec2 position;
    double s_a = 0, s_b = 0;  // arclength parameters of the two passages
    int seg_a = 0, seg_b = 0;
};

struct Passage {
    double s = 0;
    int seg = 0;
};

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Direction of the curve at arclength s, averaged over a few segments on
/// both sides to suppress single-chord noise near a crossing.
Vec2 smoothed_tangent(const ClosedCurve& curve, const std::vector<double>& s_base, double s,
                      int window) {
    const int n = static_cast<int>(curve.segment_count());
    auto it = std::upper_bound(s_base.begin(), s_base.end(), s);
    int seg = static_cast<int>(it - s_base.begin()) - 1;
    seg = std::clamp(seg, 0, n - 1);
    Vec2 sum{0, 0};
    for (int d = -window; d <= window; ++d) {
        int j = seg + d;
        if (curve.is_closed) {
            j = ((j % n) + n) % n;
        } else if (j < 0 || j >= n) {
            continue;
        }
        sum += curve.seg_b(static_cast<std::size_t>(j)) - curve.seg_a(static_cast<std::size_t>(j));
    }
    return normalized(sum);
}

Vec2 segment_tangent(const ClosedCurve& curve, int seg) {
    return normalized(curve.seg_b(seg) - curve.seg_a(seg));
}

}  // namespace

std::vector<DoublePoint> find_double_points(const ClosedCurve& curve,
                                            const IntersectOptions& options) {
    validate_curve(curve);
    const int n = static_cast<int>(curve.segment_count());
    const double total_len = curve_length(curve);

    std::vector<double> s_base(n + 1, 0.0);
    for (int i = 0; i < n; ++i) s_base[i + 1] = s_base[i] + dist(curve.seg_a(i), curve.seg_b(i));

    SegmentIndex grid;
    grid.build(curve);

    std::unordered_set<std::int64_t> seen;
    std::vector<Hit> hits;
    for (int i = 0; i < n; ++i) {
        const Vec2 p = curve.seg_a(i), p2 = curve.seg_b(i);
        const Vec2 r = p2 - p;
        grid.visit_box(p, p2, [&](int j) {
            if (j <= i) return;
            const int gap = curve.is_closed ? std::min(j - i, n - (j - i)) : j - i;
            if (gap <= 1) return;  // same or adjacent segment
            const std::int64_t pair_key = static_cast<std::int64_t>(i) * n + j;
            if (!seen.insert(pair_key).second) return;

            const Vec2 q = curve.seg_a(j), q2 = curve.seg_b(j);
            const Vec2 s = q2 - q;
            const double denom = cross(r, s);
            const double scale = norm(r) * norm(s);
            if (std::fabs(denom) <= 1e-14 * scale) return;  // parallel chords
            const double t = cross(q - p, s) / denom;
            const double u = cross(q - p, r) / denom;
            constexpr double eps = 1e-12;
            if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) return;
            Hit hit;
            hit.position = p + r * std::clamp(t, 0.0, 1.0);
            hit.s_a = s_base[i] + std::clamp(t, 0.0, 1.0) * (s_base[i + 1] - s_base[i]);
            hit.s_b = s_base[j] + std::clamp(u, 0.0, 1.0) * (s_base[j + 1] - s_base[j]);
            hit.seg_a = i;
            hit.seg_b = j;
            hits.push_back(hit);
        });
    }

    // Cluster hits spatially.
    DisjointSet ds(hits.size());
    for (std::size_t a = 0; a < hits.size(); ++a)
        for (std::size_t b = a + 1; b < hits.size(); ++b)
            if (dist(hits[a].position, hits[b].position) <= options.cluster_tol)
                ds.unite(static_cast<int>(a), static_cast<int>(b));

    std::map<int, std::vector<int>> clusters;
    for (std::size_t a = 0; a < hits.size(); ++a)
        clusters[ds.find(static_cast<int>(a))].push_back(static_cast<int>(a));

    std::vector<DoublePoint> result;
    for (const auto& [root, ids] : clusters) {
        Vec2 centroid{0, 0};
        for (int id : ids) centroid += hits[id].position;
        centroid = centroid / static_cast<double>(ids.size());

        bool excluded = false;
        for (Vec2 ex : options.exclude_points)
            if (dist(centroid, ex) <= options.exclude_radius) excluded = true;
        if (excluded) continue;

        // Group the passage parameters of the cluster; groups separated by
        // more than a few local chord lengths are distinct branches.
        std::vector<Passage> passages;
        for (int id : ids) {
            passages.push_back({hits[id].s_a, hits[id].seg_a});
            passages.push_back({hits[id].s_b, hits[id].seg_b});
        }
        std::sort(passages.begin(), passages.end(),
                  [](const Passage& a, const Passage& b) { return a.s < b.s; });

        auto local_len = [&](const Passage& pass) {
            return s_base[pass.seg + 1] - s_base[pass.seg];
        };
        std::vector<std::vector<Passage>> groups;
        for (const Passage& pass : passages) {
            const double thresh = 3.0 * local_len(pass) + options.cluster_tol;
            if (groups.empty() || pass.s - groups.back().back().s > thresh)
                groups.push_back({pass});
            else
                groups.back().push_back(pass);
        }
        // Wrap-around: the first and last group may be one branch. Members of
        // the tail group are shifted below zero so the group mean stays a
        // circular mean.
        if (curve.is_closed && groups.size() > 1) {
            const Passage& first = groups.front().front();
            const Passage& last = groups.back().back();
            const double wrap_gap = (total_len - last.s) + first.s;
            if (wrap_gap <= 3.0 * local_len(first) + options.cluster_tol) {
                for (Passage pass : groups.back()) {
                    pass.s -= total_len;
                    groups.front().push_back(pass);
                }
                groups.pop_back();
            }
        }

        if (groups.size() < 2)
            throw NonGenericCurve("self-grazing cluster without two distinct branches");
        if (groups.size() > 2)
            throw NonGenericCurve("cluster with " + std::to_string(groups.size()) +
                                  " branch passages (triple point); perturb the phase");

        auto rep_s = [&](const std::vector<Passage>& group) {
            double acc = 0;
            for (const Passage& pass : group) acc += pass.s;
            double s = acc / static_cast<double>(group.size());
            if (s < 0) s += total_len;
            if (s >= total_len) s -= total_len;
            return s;
        };

        DoublePoint dp;
        dp.position = centroid;
        dp.s1 = rep_s(groups[0]);
        dp.s2 = rep_s(groups[1]);
        if (dp.s2 < dp.s1) std::swap(dp.s1, dp.s2);
        dp.tangent1 = smoothed_tangent(curve, s_base, dp.s1, 2);
        dp.tangent2 = smoothed_tangent(curve, s_base, dp.s2, 2);
        dp.angle = line_angle(dp.tangent1, dp.tangent2);
        if (dp.angle < options.angle_tol) {
            // Last resort: raw chord directions instead of the smoothing
            // window (slivers shorter than the window would be washed out).
            const Vec2 t1 = segment_tangent(curve, groups[0].front().seg);
            const Vec2 t2 = segment_tangent(curve, groups[1].front().seg);
            const double raw = line_angle(t1, t2);
            if (raw < options.angle_tol)
                throw NonGenericCurve("crossing angle " + std::to_string(std::min(raw, dp.angle)) +
                                      " below tolerance; perturb the phase");
            dp.tangent1 = t1;
            dp.tangent2 = t2;
            dp.angle = raw;
        }
        result.push_back(dp);
    }

    std::sort(result.begin(), result.end(),
              [](const DoublePoint& a, const DoublePoint& b) { return a.s1 < b.s1; });
    return result;
}

// ---------------------------------------------------------------------------
// Arrangement construction.

namespace {

struct WalkGeometry {
    std::vector<Vec2> loop;  // concatenated boundary polyline of one face

    double signed_area() const {
        double acc = 0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vec2 a = loop[i], b = loop[(i + 1) % loop.size()];
            acc += cross(a, b);
        }
        return 0.5 * acc;
    }

    int winding_around(Vec2 p) const {
        double angle = 0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vec2 u = loop[i] - p, v = loop[(i + 1) % loop.size()] - p;
            angle += std::atan2(cross(u, v), dot(u, v));
        }
        return static_cast<int>(std::lround(angle / (2.0 * M_PI)));
    }
};

/// Direction in which the dart leaves its tail vertex.
Vec2 dart_direction(const Arrangement& arr, int dart) {
    const auto& pts = arr.arcs[dart / 2].points;
    if (dart % 2 == 0) {
        const Vec2 base = pts.front();
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (dist(pts[i], base) > 1e-11) return normalized(pts[i] - base);
        return normalized(pts.back() - base);
    }
    const Vec2 base = pts.back();
    for (std::size_t i = pts.size() - 1; i-- > 0;)
        if (dist(pts[i], base) > 1e-11) return normalized(pts[i] - base);
    return normalized(pts.front() - base);
}

int dart_head_vertex(const Arrangement& arr, int dart) {
    const auto& arc = arr.arcs[dart / 2];
    return (dart % 2 == 0) ? arc.to : arc.from;
}

/// Appends the dart's polyline from tail to head, omitting the head point.
void append_dart_geometry(const Arrangement& arr, int dart, std::vector<Vec2>& out) {
    const auto& pts = arr.arcs[dart / 2].points;
    if (dart % 2 == 0) {
        out.insert(out.end(), pts.begin(), pts.end() - 1);
    } else {
        out.insert(out.end(), pts.rbegin(), pts.rend() - 1);
    }
}

/// A point strictly inside the face, found by shooting a short inward normal
/// from an edge midpoint and validating against the face walk; falls back to
/// other edges when the first candidate fails.
bool face_representative(const Arrangement& arr, const ClosedCurve& curve,
                         const std::vector<int>& boundary, const WalkGeometry& walk,
                         bool unbounded, Vec2& out) {
    if (unbounded) {
        Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
        for (const Vec2& p : curve.points) {
            lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
            hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
        }
        const double diag = std::max(dist(lo, hi), 1.0);
        out = hi + Vec2{diag, 0.7 * diag};
        return true;
    }

    std::vector<int> order = boundary;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return arr.arcs[a / 2].length > arr.arcs[b / 2].length;
    });
    for (int dart : order) {
        const auto& pts = arr.arcs[dart / 2].points;
        // Longest chord of this arc.
        std::size_t best = 0;
        double best_len = -1;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double len = dist(pts[i], pts[i + 1]);
            if (len > best_len) { best_len = len; best = i; }
        }
        if (best_len <= 0) continue;
        Vec2 a = pts[best], b = pts[best + 1];
        if (dart % 2 == 1) std::swap(a, b);  // orient along the dart
        const Vec2 m = (a + b) * 0.5;
        const Vec2 n_hat = perp_left(normalized(b - a));

        // Clearance to the rest of the curve decides how far we may step.
        double clearance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const double d = point_segment_distance(m, curve.seg_a(i), curve.seg_b(i));
            if (d > 1e-15) clearance = std::min(clearance, d);
            else if (best_len > 0) clearance = std::min(clearance, 0.5 * best_len);
        }
        for (double frac : {0.45, 0.1, 0.02}) {
            const double delta = std::max(clearance, 0.25 * best_len) * frac;
            if (delta < 2e-9) continue;
            const Vec2 p = m + n_hat * delta;
            if (distance_to_curve(curve, p) <= 1e-9) continue;
            if (walk.winding_around(p) == 1) {
                out = p;
                return true;
            }
        }
    }
    // Diagonal-midpoint fallback: midpoints between walk vertices.
    for (std::size_t i = 0; i < walk.loop.size(); ++i) {
        for (std::size_t step : {walk.loop.size() / 3, walk.loop.size() / 2}) {
            if (step == 0) continue;
            const Vec2 p = (walk.loop[i] + walk.loop[(i + step) % walk.loop.size()]) * 0.5;
            if (distance_to_curve(curve, p) <= 1e-9) continue;
            if (walk.winding_around(p) == 1) {
                out = p;
                return true;
            }
        }
    }
    return false;
}

}  // namespace

Arrangement build_arrangement(const ClosedCurve& curve, const std::vector<DoublePoint>& doubles) {
    validate_curve(curve);
    if (!curve.is_closed) throw DomainError("arrangements need a closed curve");
    Arrangement arr;
    arr.vertices = doubles;

    const int n = static_cast<int>(curve.size());
    std::vector<double> s_base(n + 1, 0.0);
    for (int i = 0; i < n; ++i) s_base[i + 1] = s_base[i] + dist(curve.seg_a(i), curve.seg_b(i));
    const double total_len = s_base[n];

    if (doubles.empty()) {
        // Embedded curve: one closed arc, two faces.
        Arrangement::Arc arc;
        arc.points = curve.points;
        arc.points.push_back(curve.points.front());
        arc.length = total_len;
        arr.arcs.push_back(std::move(arc));
        arr.dart_face = {0, 1};

        WalkGeometry fwd_walk{curve.points};
        std::vector<Vec2> rev(curve.points.rbegin(), curve.points.rend());
        WalkGeometry bwd_walk{rev};
        const bool fwd_ccw = fwd_walk.signed_area() > 0;

        for (int face_id = 0; face_id < 2; ++face_id) {
            Arrangement::Face face;
            face.boundary_darts = {face_id};
            // Left of the forward dart is the interior iff the curve is CCW.
            face.unbounded = (face_id == 0) ? !fwd_ccw : fwd_ccw;
            const WalkGeometry& walk = (face_id == 0) ? fwd_walk : bwd_walk;
            if (!face_representative(arr, curve, face.boundary_darts, walk, face.unbounded,
                                     face.representative))
                throw ArrangementInconsistency("no valid interior representative found");
            face.winding = winding_number(curve, face.representative);
            arr.faces.push_back(std::move(face));
        }
        const int unb = arr.faces[0].unbounded ? 0 : 1;
        if (arr.faces[unb].winding != 0)
            throw ArrangementInconsistency("unbounded face winding is not zero");
        if (std::abs(arr.faces[1 - unb].winding) != 1)
            throw ArrangementInconsistency("embedded curve interior winding is not +-1");
        return arr;
    }

    // Split the curve at the passage parameters.
    struct Cut { double s; int vertex; };
    std::vector<Cut> cuts;
    for (std::size_t v = 0; v < doubles.size(); ++v) {
        cuts.push_back({doubles[v].s1, static_cast<int>(v)});
        cuts.push_back({doubles[v].s2, static_cast<int>(v)});
    }
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.s < b.s; });

    const double s_eps = 1e-12 * total_len;
    for (std::size_t j = 0; j < cuts.size(); ++j) {
        const Cut& c0 = cuts[j];
        const Cut& c1 = cuts[(j + 1) % cuts.size()];
        Arrangement::Arc arc;
        arc.from = c0.vertex;
        arc.to = c1.vertex;
        arc.points.push_back(doubles[c0.vertex].position);
        const double s_end = (j + 1 < cuts.size()) ? c1.s : c1.s + total_len;
        // Curve samples strictly inside (c0.s, s_end).
        auto it = std::upper_bound(s_base.begin(), s_base.end(), c0.s + s_eps);
        for (std::size_t idx = static_cast<std::size_t>(it - s_base.begin());; ++idx) {
            const double s_here = (idx < static_cast<std::size_t>(n)) ? s_base[idx]
                                                                      : s_base[idx - n] + total_len;
            if (s_here >= s_end - s_eps) break;
            arc.points.push_back(curve.points[idx % n]);
        }
        arc.points.push_back(doubles[c1.vertex].position);
        for (std::size_t i = 0; i + 1 < arc.points.size(); ++i)
            arc.length += dist(arc.points[i], arc.points[i + 1]);
        arr.arcs.push_back(std::move(arc));
    }

    // Emanating darts per vertex, counterclockwise.
    const int n_darts = static_cast<int>(arr.arcs.size()) * 2;
    std::vector<std::vector<int>> emanating(doubles.size());
    for (std::size_t a = 0; a < arr.arcs.size(); ++a) {
        emanating[arr.arcs[a].from].push_back(static_cast<int>(2 * a));
        emanating[arr.arcs[a].to].push_back(static_cast<int>(2 * a + 1));
    }
    std::vector<std::vector<double>> ema_angle(doubles.size());
    for (std::size_t v = 0; v < doubles.size(); ++v) {
        if (emanating[v].size() != 4)
            throw ArrangementInconsistency("vertex with " + std::to_string(emanating[v].size()) +
                                           " incident darts (expected 4)");
        auto& darts = emanating[v];
        std::sort(darts.begin(), darts.end(), [&](int da, int db) {
            const Vec2 ta = dart_direction(arr, da), tb = dart_direction(arr, db);
            return std::atan2(ta.y, ta.x) < std::atan2(tb.y, tb.x);
        });
        for (int d : darts) {
            const Vec2 t = dart_direction(arr, d);
            ema_angle[v].push_back(std::atan2(t.y, t.x));
        }
    }

    auto next_dart = [&](int dart) {
        const int v = dart_head_vertex(arr, dart);
        const int twin = dart ^ 1;
        const auto& darts = emanating[v];
        const auto it = std::find(darts.begin(), darts.end(), twin);
        if (it == darts.end()) throw ArrangementInconsistency("twin dart missing at vertex");
        const std::size_t idx = static_cast<std::size_t>(it - darts.begin());
        return darts[(idx + darts.size() - 1) % darts.size()];
    };

    // Trace faces (interior on the left of each dart).
    arr.dart_face.assign(n_darts, -1);
    std::vector<WalkGeometry> walks;
    for (int d0 = 0; d0 < n_darts; ++d0) {
        if (arr.dart_face[d0] != -1) continue;
        const int face_id = static_cast<int>(arr.faces.size());
        Arrangement::Face face;
        WalkGeometry walk;
        int d = d0;
        do {
            arr.dart_face[d] = face_id;
            face.boundary_darts.push_back(d);
            append_dart_geometry(arr, d, walk.loop);
            d = next_dart(d);
            if (face.boundary_darts.size() > arr.arcs.size() * 2 + 4)
                throw ArrangementInconsistency("face walk failed to close");
        } while (d != d0);
        arr.faces.push_back(std::move(face));
        walks.push_back(std::move(walk));
    }

    if (arr.faces.size() != doubles.size() + 2)
        throw ArrangementInconsistency(
            "Euler formula violated: " + std::to_string(doubles.size()) + " vertices but " +
            std::to_string(arr.faces.size()) + " faces");

    // The unbounded face is the unique clockwise walk.
    int unbounded = -1;
    double min_area = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        const double area = walks[f].signed_area();
        if (area < min_area) {
            min_area = area;
            unbounded = static_cast<int>(f);
        }
    }
    if (min_area >= 0) throw ArrangementInconsistency("no clockwise face walk found");
    arr.faces[unbounded].unbounded = true;

    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        if (!face_representative(arr, curve, arr.faces[f].boundary_darts, walks[f],
                                 arr.faces[f].unbounded, arr.faces[f].representative))
            throw ArrangementInconsistency("no valid interior representative for face " +
                                           std::to_string(f));
        arr.faces[f].winding = winding_number(curve, arr.faces[f].representative);
    }

    if (arr.faces[unbounded].winding != 0)
        throw ArrangementInconsistency("unbounded face winding is not zero");
    for (std::size_t a = 0; a < arr.arcs.size(); ++a) {
        const int w_left = arr.faces[arr.dart_face[2 * a]].winding;
        const int w_right = arr.faces[arr.dart_face[2 * a + 1]].winding;
        if (w_left - w_right != 1)
            throw ArrangementInconsistency("windings across an edge differ by " +
                                           std::to_string(w_left - w_right) + ", expected 1");
    }

    // Sector faces: the sector counterclockwise of each emanating dart is the
    // face on that dart's left.
    arr.sectors.resize(doubles.size());
    for (std::size_t v = 0; v < doubles.size(); ++v)
        for (int i = 0; i < 4; ++i) arr.sectors[v][i] = arr.dart_face[emanating[v][i]];

    return arr;
}

HalfInteger double_point_index(const Arrangement& arrangement, int vertex) {
    const auto& sector = arrangement.sectors.at(vertex);
    std::int64_t sum = 0;
    for (int f : sector) sum += arrangement.faces[f].winding;
    if (sum % 2 != 0)
        throw NumericError("sector winding sum at a double point is odd");
    return HalfInteger::from_doubled(sum / 2);
}

std::int64_t sum_winding_squares(const Arrangement& arrangement) {
    std::int64_t acc = 0;
    for (const auto& face : arrangement.faces)
        acc += static_cast<std::int64_t>(face.winding) * face.winding;
    return acc;
}

HalfInteger sum_index_squares(const Arrangement& arrangement) {
    // ind = sum/4 with sum the four sector windings; ind^2 = sum^2 / 16.
    std::int64_t sixteenths = 0;
    for (std::size_t v = 0; v < arrangement.vertices.size(); ++v) {
        std::int64_t sum = 0;
        for (int f : arrangement.sectors[v]) sum += arrangement.faces[f].winding;
        sixteenths += sum * sum;
    }
    if (sixteenths % 8 != 0)
        throw NumericError("sum of squared double-point indices is not a half-integer");
    return HalfInteger::from_doubled(sixteenths / 8);
}

std::int64_t viro_jplus(const Arrangement& arrangement) {
    const HalfInteger ind2 = sum_index_squares(arrangement);
    const std::int64_t base =
        1 + static_cast<std::int64_t>(arrangement.vertices.size()) - sum_winding_squares(arrangement);
    const HalfInteger total = HalfInteger::from_int(base) + ind2;
    return total.as_integer();  // throws NumericError if not an integer
}

std::int64_t viro_jplus(const ClosedCurve& curve, const IntersectOptions& options) {
    const auto doubles = find_double_points(curve, options);
    return viro_jplus(build_arrangement(curve, doubles));
}

}  // namespace twocenter
