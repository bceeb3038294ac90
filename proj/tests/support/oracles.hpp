#pragma once

// Brute-force reference computations used by the unit and acceptance
// suites. None of these call into the code paths they are compared with.

#include "vdeval/geometry.hpp"
#include "vdeval/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace vdeval::oracle {

/// Box IOU from counting grid-cell centers on an n x n raster. Rows and
/// columns are independent, so the 2D count is the product of the per-axis
/// counts.
inline double raster_iou(const Box& a, const Box& b, int n = 1000) {
    auto count = [n](double lo1, double hi1, double lo2, double hi2, bool both) {
        long long c = 0;
        for (int i = 0; i < n; ++i) {
            const double p = (i + 0.5) / n;
            const bool in1 = p >= lo1 && p <= hi1;
            const bool in2 = p >= lo2 && p <= hi2;
            if (both ? (in1 && in2) : in1) ++c;
        }
        return c;
    };
    const long long ax = count(a.x_min, a.x_max, 0, 0, false);
    const long long ay = count(a.y_min, a.y_max, 0, 0, false);
    const long long bx = count(b.x_min, b.x_max, 0, 0, false);
    const long long by = count(b.y_min, b.y_max, 0, 0, false);
    const long long ix = count(a.x_min, a.x_max, b.x_min, b.x_max, true);
    const long long iy = count(a.y_min, a.y_max, b.y_min, b.y_max, true);
    const double inter = static_cast<double>(ix * iy);
    const double uni = static_cast<double>(ax * ay + bx * by) - inter;
    return uni > 0 ? inter / uni : 0.0;
}

/// Plain overlap formula, written independently of the library.
inline double overlap(const Box& a, const Box& b) {
    const double w = std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
    const double h = std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
    const double inter = w * h;
    if (inter <= 0) return 0.0;
    return inter / ((a.x_max - a.x_min) * (a.y_max - a.y_min) +
                    (b.x_max - b.x_min) * (b.y_max - b.y_min) - inter);
}

struct Assignment {
    std::size_t count = 0;
    double total_iou = 0.0;
};

/// Best one-to-one assignment by exhaustive search over every subset of
/// admissible pairs: maximizes pair count, then total weight. `weight(i, j)`
/// returns a negative value for inadmissible pairs.
inline Assignment exhaustive_assignment(std::size_t rows, std::size_t cols,
                                        const std::function<double(std::size_t, std::size_t)>& weight) {
    Assignment best;
    std::vector<bool> used(cols, false);
    std::function<void(std::size_t, Assignment)> recurse = [&](std::size_t r, Assignment cur) {
        if (r == rows) {
            if (cur.count > best.count || (cur.count == best.count && cur.total_iou > best.total_iou)) {
                best = cur;
            }
            return;
        }
        recurse(r + 1, cur);  // row left unassigned
        for (std::size_t c = 0; c < cols; ++c) {
            if (used[c]) continue;
            const double w = weight(r, c);
            if (w < 0) continue;
            used[c] = true;
            recurse(r + 1, {cur.count + 1, cur.total_iou + w});
            used[c] = false;
        }
    };
    recurse(0, {});
    return best;
}

/// Reference labels for one frame at one confidence cut, following the
/// greedy protocol literally: sort the admitted detections, then let each
/// claim its best unclaimed same-class object.
inline std::size_t greedy_tp_count(const std::vector<Detection>& dets,
                                   const std::vector<GroundTruthObject>& gts, double match_iou,
                                   double cut) {
    std::vector<std::size_t> idx;
    std::vector<double> best(dets.size(), 0.0);
    for (std::size_t d = 0; d < dets.size(); ++d) {
        if (dets[d].confidence < cut) continue;
        for (const auto& g : gts) {
            if (g.object_class == dets[d].object_class) best[d] = std::max(best[d], overlap(dets[d].box, g.box));
        }
        idx.push_back(d);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (dets[a].confidence != dets[b].confidence) return dets[a].confidence > dets[b].confidence;
        return best[a] > best[b];
    });
    std::vector<bool> claimed(gts.size(), false);
    std::size_t tp = 0;
    for (std::size_t d : idx) {
        double bv = -1;
        std::size_t bg = gts.size();
        for (std::size_t g = 0; g < gts.size(); ++g) {
            if (claimed[g] || gts[g].object_class != dets[d].object_class) continue;
            const double v = overlap(dets[d].box, gts[g].box);
            if (v > bv) {
                bv = v;
                bg = g;
            }
        }
        if (bg < gts.size() && bv >= match_iou && bv > 0) {
            claimed[bg] = true;
            ++tp;
        }
    }
    return tp;
}

/// AP by enumerating every distinct confidence as a cut, re-matching all
/// frames from scratch at each cut, and accumulating
/// (recall - previous recall) * precision.
inline double brute_force_ap(const std::vector<Detection>& dets,
                             const std::vector<GroundTruthFrame>& frames, double match_iou) {
    std::size_t total_gt = 0;
    for (const auto& f : frames) total_gt += f.objects.size();
    std::set<double, std::greater<>> cuts;
    for (const auto& d : dets) cuts.insert(d.confidence);

    std::map<FrameId, std::vector<Detection>> by_frame;
    for (const auto& d : dets) by_frame[d.id()].push_back(d);
    std::map<FrameId, std::vector<GroundTruthObject>> gt;
    for (const auto& f : frames) gt[f.id()] = f.objects;

    double ap = 0.0;
    double prev_recall = 0.0;
    for (double cut : cuts) {
        std::size_t tp = 0;
        std::size_t admitted = 0;
        for (const auto& [id, list] : by_frame) {
            for (const auto& d : list) admitted += d.confidence >= cut ? 1 : 0;
            const auto it = gt.find(id);
            if (it != gt.end()) tp += greedy_tp_count(list, it->second, match_iou, cut);
        }
        const double precision = static_cast<double>(tp) / static_cast<double>(admitted);
        const double recall = static_cast<double>(tp) / static_cast<double>(total_gt);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return ap;
}

}  // namespace vdeval::oracle
