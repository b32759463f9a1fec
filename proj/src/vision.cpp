#include "swarmsim/vision.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swarmsim {

namespace {

struct BlobRay {
    BlobObservation blob;
    Vec3 direction;
};

BlobObservation blob_from_body(const Vec3& rel, int source, bool reflection)
{
    BlobObservation b;
    b.azimuth = normalize_angle(std::atan2(rel.y, rel.x));
    b.elevation = std::atan2(-rel.z, rel.norm_xy());
    b.source_agent = source;
    b.is_reflection = reflection;
    return b;
}

bool in_blind_spot(double azimuth, double half_angle)
{
    return std::abs(normalize_angle(azimuth - kPi)) <= half_angle;
}

// True when the segment from->to passes strictly within `radius` of `center`.
bool segment_hits_sphere(const Vec3& from, const Vec3& to, const Vec3& center, double radius)
{
    const Vec3 seg = to - from;
    const double len2 = seg.dot(seg);
    double t = len2 > 0.0 ? (center - from).dot(seg) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const Vec3 closest = from + seg * t;
    return (closest - center).norm() < radius;
}

Vec3 body_center(const AgentState& agent, const LedLayout& layout)
{
    const Vec3 mid_body = (layout.pair_midpoint() + layout.anterior) * 0.5;
    return body_to_world(agent.pose, Vec3{mid_body.x, mid_body.y, layout.pair_midpoint().z});
}

double wrapped_difference(double a, double b)
{
    return std::abs(normalize_angle(a - b));
}

// Horizontal ranges along a sight ray of `azimuth` where it meets the circle
// of radius `s` about `center` (follower body frame). A ray that misses
// reports its closest approach as a single grazing range.
struct CircleHits {
    std::array<double, 2> ranges{};
    int count{0};
};

CircleHits circle_hits(double azimuth, const Vec3& center, double s)
{
    CircleHits hits;
    const Vec3 ray{std::cos(azimuth), std::sin(azimuth), 0.0};
    const Vec3 c{center.x, center.y, 0.0};
    const double along = ray.dot(c);
    const double disc = along * along - c.dot(c) + s * s;
    if (disc < 0.0) {
        hits.ranges = {along, along};
        hits.count = 1;
        return hits;
    }
    const double root = std::sqrt(disc);
    hits.ranges = {along - root, along + root};
    hits.count = 2;
    return hits;
}

// How far a blob's elevation is from where LED 3 would appear on its sight
// ray, given the pair estimate. Infinite when the ray cannot reach LED 3.
double anterior_residual(const BlobObservation& blob, const LeaderEstimate& pair, const LedLayout& layout)
{
    const CircleHits hits = circle_hits(blob.azimuth, pair.leader_position, layout.longitudinal_offset());
    const double anterior_z = pair.leader_position.z + layout.anterior_height();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < hits.count; ++i) {
        if (hits.ranges[i] > 0.0) {
            best = std::min(best, std::abs(std::atan2(-anterior_z, hits.ranges[i]) - blob.elevation));
        }
    }
    return best;
}

void merge_close_blobs(std::vector<BlobObservation>& blobs, double threshold)
{
    if (threshold <= 0.0) {
        return;
    }
    for (;;) {
        double best = threshold;
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t i = 0; i < blobs.size(); ++i) {
            for (std::size_t j = i + 1; j < blobs.size(); ++j) {
                const double sep = angular_separation(blobs[i], blobs[j]);
                if (sep < best) {
                    best = sep;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best >= threshold) {
            return;
        }
        const Vec3 mid = blob_direction(blobs[bi]) + blob_direction(blobs[bj]);
        blobs[bi] = blob_from_body(mid, blobs[bi].source_agent, blobs[bi].is_reflection && blobs[bj].is_reflection);
        blobs.erase(blobs.begin() + static_cast<std::ptrdiff_t>(bj));
    }
}

}  // namespace

double LedLayout::longitudinal_offset() const
{
    const Vec3 d = anterior - pair_midpoint();
    return std::hypot(d.x, d.y);
}

void LedLayout::validate() const
{
    if (posterior_top.x != posterior_bottom.x || posterior_top.y != posterior_bottom.y) {
        throw std::invalid_argument("posterior LEDs must differ only in their vertical coordinate");
    }
    if (!(baseline() > 0.0)) {
        throw std::invalid_argument("posterior_top must sit above posterior_bottom (baseline > 0)");
    }
    if (anterior.y != posterior_top.y || !(anterior.x > posterior_top.x)) {
        throw std::invalid_argument("anterior LED must lie forward of the posterior pair on the body axis");
    }
}

void VisionParams::validate() const
{
    const std::array<std::pair<double, const char*>, 11> fields{{
        {blind_spot_half_angle, "blind_spot_half_angle"},
        {fov_elevation_limit, "fov_elevation_limit"},
        {merge_threshold, "merge_threshold"},
        {pitch_match_threshold, "pitch_match_threshold"},
        {noise_sigma, "noise_sigma"},
        {reflection_rate, "reflection_rate"},
        {max_range, "max_range"},
        {body_radius, "body_radius"},
        {pair_azimuth_tolerance, "pair_azimuth_tolerance"},
        {heading_disambiguation_margin, "heading_disambiguation_margin"},
        {1.0 - reflection_rate, "reflection_rate (<= 1)"},
    }};
    for (const auto& [value, name] : fields) {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            throw std::invalid_argument(std::string("vision parameter '") + name + "' must be nonnegative");
        }
    }
}

Vec3 blob_direction(const BlobObservation& blob)
{
    const double c = std::cos(blob.elevation);
    return {c * std::cos(blob.azimuth), c * std::sin(blob.azimuth), -std::sin(blob.elevation)};
}

double angular_separation(const BlobObservation& a, const BlobObservation& b)
{
    const Vec3 u = blob_direction(a);
    const Vec3 v = blob_direction(b);
    const Vec3 cross{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    return std::atan2(cross.norm(), u.dot(v));
}

std::vector<BlobObservation> observe(std::span<const AgentState> world, std::size_t observer,
                                     const LedLayout& layout, const VisionParams& params, Rng& rng)
{
    std::vector<BlobObservation> blobs;
    if (observer >= world.size()) {
        return blobs;
    }
    const PoseYaw& eye = world[observer].pose;
    const std::array<Vec3, 3> leds{layout.posterior_bottom, layout.posterior_top, layout.anterior};

    std::vector<Vec3> centers;
    centers.reserve(world.size());
    for (const auto& agent : world) {
        centers.push_back(body_center(agent, layout));
    }

    std::vector<std::size_t> emitters;
    for (std::size_t j = 0; j < world.size(); ++j) {
        if (j == observer || !world[j].leds_on) {
            continue;
        }
        const Vec3 ref_rel = world_to_body(eye, world[j].pose.position);
        if (ref_rel.norm_xy() > 0.0
            && in_blind_spot(std::atan2(ref_rel.y, ref_rel.x), params.blind_spot_half_angle)) {
            continue;
        }
        emitters.push_back(j);
        for (const Vec3& offset : leds) {
            const Vec3 led = body_to_world(world[j].pose, offset);
            const Vec3 rel = world_to_body(eye, led);
            if (rel.norm() > params.max_range || rel.norm_xy() == 0.0) {
                continue;
            }
            const BlobObservation blob = blob_from_body(rel, static_cast<int>(j), false);
            if (in_blind_spot(blob.azimuth, params.blind_spot_half_angle)
                || std::abs(blob.elevation) > params.fov_elevation_limit) {
                continue;
            }
            bool occluded = false;
            for (std::size_t k = 0; k < world.size() && !occluded; ++k) {
                if (k == observer || k == j) {
                    continue;
                }
                occluded = segment_hits_sphere(eye.position, led, centers[k], params.body_radius);
            }
            if (!occluded) {
                blobs.push_back(blob);
            }
        }
    }

    merge_close_blobs(blobs, params.merge_threshold);

    if (params.reflection_rate > 0.0) {
        for (std::size_t j : emitters) {
            if (!rng.bernoulli(params.reflection_rate)) {
                continue;
            }
            const auto pick = std::min<std::size_t>(static_cast<std::size_t>(rng.uniform() * 3.0), 2);
            Vec3 led = body_to_world(world[j].pose, leds[pick]);
            led.z = 2.0 * params.surface_z - led.z;
            const Vec3 rel = world_to_body(eye, led);
            if (rel.norm_xy() == 0.0) {
                continue;
            }
            const BlobObservation mirror = blob_from_body(rel, static_cast<int>(j), true);
            if (!in_blind_spot(mirror.azimuth, params.blind_spot_half_angle)
                && std::abs(mirror.elevation) <= params.fov_elevation_limit) {
                blobs.push_back(mirror);
            }
        }
    }

    if (params.noise_sigma > 0.0) {
        const double limit = 0.5 * kPi - 1e-9;
        for (auto& b : blobs) {
            b.azimuth = normalize_angle(b.azimuth + rng.normal(0.0, params.noise_sigma));
            b.elevation = std::clamp(b.elevation + rng.normal(0.0, params.noise_sigma), -limit, limit);
        }
    }
    return blobs;
}

double estimate_distance(const BlobObservation& lower, const BlobObservation& upper, double baseline)
{
    // Both LEDs share one horizontal range rho; their heights differ by the
    // baseline, so rho * (tan e_lower - tan e_upper) = baseline.
    const double tan_lower = std::tan(lower.elevation);
    const double tan_upper = std::tan(upper.elevation);
    const double spread = tan_lower - tan_upper;
    if (!(spread > 0.0) || !std::isfinite(spread)) {
        throw GeometryError("posterior pair has no vertical separation: distance is unbounded");
    }
    const double rho = baseline / spread;
    const double tan_mid = 0.5 * (tan_lower + tan_upper);
    return rho * std::sqrt(1.0 + tan_mid * tan_mid);
}

HeadingSolution estimate_heading(const BlobObservation& anterior, const LeaderEstimate& pair_estimate,
                                 const LedLayout& layout, const VisionParams& params,
                                 std::optional<Vec3> previous_heading)
{
    HeadingSolution out;
    const double s = layout.longitudinal_offset();
    const Vec3 center{pair_estimate.leader_position.x, pair_estimate.leader_position.y, 0.0};
    const Vec3 ray{std::cos(anterior.azimuth), std::sin(anterior.azimuth), 0.0};
    const double along = ray.dot(center);
    const double disc = along * along - center.dot(center) + s * s;
    if (disc < 0.0) {
        return out;
    }
    const double root = std::sqrt(disc);
    std::array<double, 2> ranges{along - root, along + root};
    std::array<Vec3, 2> headings;
    std::array<double, 2> residuals{};
    const double anterior_z = pair_estimate.leader_position.z + layout.anterior_height();
    int usable = 0;
    for (int i = 0; i < 2; ++i) {
        if (!(ranges[i] > 0.0)) {
            residuals[i] = kPi;
            continue;
        }
        ++usable;
        const Vec3 hit = ray * ranges[i];
        headings[i] = (hit - center) / s;
        const double predicted = std::atan2(-anterior_z, ranges[i]);
        residuals[i] = std::abs(predicted - anterior.elevation);
    }
    if (usable == 0) {
        return out;
    }

    int pick = 0;
    if (!(ranges[0] > 0.0)) {
        pick = 1;
    } else if (usable == 2) {
        if (std::abs(residuals[0] - residuals[1]) > params.heading_disambiguation_margin) {
            pick = residuals[0] <= residuals[1] ? 0 : 1;
        } else if (previous_heading) {
            pick = headings[0].dot(*previous_heading) >= headings[1].dot(*previous_heading) ? 0 : 1;
        } else {
            pick = residuals[0] <= residuals[1] ? 0 : 1;
        }
    }
    const Vec3 h = headings[pick];
    const double n = h.norm_xy();
    if (!(n > 0.0)) {
        return out;
    }
    out.heading = {h.x / n, h.y / n, 0.0};
    out.valid = true;
    return out;
}

std::optional<LeaderEstimate> parse_blobs(std::span<const BlobObservation> blobs, const LedLayout& layout,
                                          const VisionParams& params, std::optional<Vec3> previous_heading)
{
    if (blobs.size() < 2) {
        return std::nullopt;
    }
    std::vector<std::size_t> order(blobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Lowest first: elevation is positive down.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return blobs[a].elevation > blobs[b].elevation;
    });

    // Posterior pair: the lowest blob that has a partner stacked above it at
    // the same azimuth, with its lowest such partner. Seen steeply from below,
    // LED 3 can be the lowest blob, so it is skipped when it has no partner.
    std::size_t lower = order[0];
    std::size_t upper = order[1];
    bool stacked = false;
    for (std::size_t a = 0; a + 1 < order.size() && !stacked; ++a) {
        for (std::size_t k = a + 1; k < order.size(); ++k) {
            if (wrapped_difference(blobs[order[k]].azimuth, blobs[order[a]].azimuth)
                <= params.pair_azimuth_tolerance) {
                lower = order[a];
                upper = order[k];
                stacked = true;
                break;
            }
        }
    }

    LeaderEstimate est;
    double rho = 0.0;
    double tan_mid = 0.0;
    try {
        est.distance = estimate_distance(blobs[lower], blobs[upper], layout.baseline());
        tan_mid = 0.5 * (std::tan(blobs[lower].elevation) + std::tan(blobs[upper].elevation));
        rho = est.distance / std::sqrt(1.0 + tan_mid * tan_mid);
    } catch (const GeometryError&) {
        return std::nullopt;
    }
    const double sin_sum = std::sin(blobs[lower].azimuth) + std::sin(blobs[upper].azimuth);
    const double cos_sum = std::cos(blobs[lower].azimuth) + std::cos(blobs[upper].azimuth);
    const PqrPoint mid{cos_sum, sin_sum, std::hypot(cos_sum, sin_sum) * tan_mid};
    est.bearing = bearing_of(mid);
    est.pitch = pitch_of(mid);
    est.leader_position = {rho * std::cos(est.bearing), rho * std::sin(est.bearing), -rho * tan_mid};
    est.source_agent = blobs[lower].source_agent;
    est.heading_valid = false;

    // LED 3 is the blob whose elevation best matches where an LED at its
    // height on the circle around the pair would appear along that blob's
    // sight ray; anything further off than the pitch threshold is a reflection.
    std::optional<std::size_t> anterior;
    double best = params.pitch_match_threshold;
    for (std::size_t k = 0; k < blobs.size(); ++k) {
        if (k == lower || k == upper) {
            continue;
        }
        const double mismatch = anterior_residual(blobs[k], est, layout);
        if (mismatch <= best) {
            best = mismatch;
            anterior = k;
        }
    }
    if (anterior) {
        const HeadingSolution h = estimate_heading(blobs[*anterior], est, layout, params, previous_heading);
        est.heading = h.heading;
        est.heading_valid = h.valid;
    }
    return est;
}

std::map<int, std::vector<BlobObservation>> group_by_source(std::span<const BlobObservation> blobs)
{
    std::map<int, std::vector<BlobObservation>> groups;
    for (const auto& b : blobs) {
        groups[b.source_agent].push_back(b);
    }
    return groups;
}

}  // namespace swarmsim
