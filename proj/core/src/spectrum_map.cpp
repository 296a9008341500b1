#include "cafsim/spectrum_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cafsim/format.hpp"

namespace cafsim {
namespace {

constexpr double kWidthEps = 1e-12;

bool is_fragment(double fraction) { return fraction < 1.0 - kWidthEps; }

}  // namespace

SpectrumMap build_spectrum_map(const SystemState& s, const SystemParams& p) {
    if (!is_feasible(s, p))
        throw std::invalid_argument("build_spectrum_map: infeasible state");

    SpectrumMap map;
    map.channels.resize(p.channels);
    for (int c = 0; c < s.pu_count; ++c) map.channels[c].pu = true;
    map.su_allocations.resize(s.su_count);
    if (s.su_count == 0) return map;

    const double share = bandwidth(s, p);
    int whole = static_cast<int>(std::floor(share + kWidthEps));
    double remainder = share - whole;
    if (remainder < kWidthEps) remainder = 0.0;

    // Whole channels first: SU k takes `whole` consecutive channels.
    int cursor = s.pu_count;
    for (int su = 0; su < s.su_count; ++su) {
        auto& alloc = map.su_allocations[su];
        alloc.total = share;
        for (int c = 0; c < whole; ++c, ++cursor) {
            map.channels[cursor].shares.push_back({su, 1.0});
            alloc.pieces.emplace_back(cursor, 1.0);
        }
    }
    if (remainder == 0.0) return map;

    // Remainders packed left to right; a remainder straddles a channel
    // boundary only when the current channel cannot take all of it, so each
    // SU ends up with at most two sub-channel fragments.
    double fill = 0.0;
    for (int su = 0; su < s.su_count; ++su) {
        double want = remainder;
        while (want > kWidthEps) {
            const double room = 1.0 - fill;
            const double take = std::min(want, room);
            map.channels[cursor].shares.push_back({su, take});
            map.su_allocations[su].pieces.emplace_back(cursor, take);
            fill += take;
            want -= take;
            if (fill >= 1.0 - kWidthEps) {
                ++cursor;
                fill = 0.0;
            }
        }
    }
    return map;
}

FragmentCensus fragment_census(const SpectrumMap& map, const SystemParams& p) {
    FragmentCensus census;
    census.bound = p.max_su_count();
    for (const auto& channel : map.channels)
        for (const auto& share : channel.shares)
            if (is_fragment(share.fraction)) ++census.total_fragments;
    for (const auto& alloc : map.su_allocations) {
        int fragments = 0;
        for (const auto& [channel, width] : alloc.pieces)
            if (is_fragment(width)) ++fragments;
        census.max_per_su = std::max(census.max_per_su, fragments);
    }
    census.within_bound = census.total_fragments <= census.bound;
    return census;
}

std::vector<std::string> spectrum_map_violations(const SpectrumMap& map, const SystemState& s,
                                                 const SystemParams& p) {
    std::vector<std::string> v;
    if (static_cast<int>(map.channels.size()) != p.channels)
        v.push_back("channel count mismatch");
    if (static_cast<int>(map.su_allocations.size()) != s.su_count)
        v.push_back("SU allocation count mismatch");

    const double share = bandwidth(s, p);
    double grand_total = 0.0;
    for (std::size_t k = 0; k < map.su_allocations.size(); ++k) {
        const auto& alloc = map.su_allocations[k];
        double total = 0.0;
        for (const auto& [channel, width] : alloc.pieces) total += width;
        grand_total += total;
        if (std::abs(total - share) > 1e-9)
            v.push_back("SU " + std::to_string(k) + " holds " + format_double(total) +
                        " instead of " + format_double(share));
        if (std::abs(alloc.total - share) > 1e-9)
            v.push_back("SU " + std::to_string(k) + " total field out of date");
    }
    if (std::abs(grand_total - s.su_count * share) > 1e-9)
        v.push_back("total SU occupancy " + format_double(grand_total) + " != " +
                    format_double(s.su_count * share));

    for (std::size_t c = 0; c < map.channels.size(); ++c) {
        const auto& channel = map.channels[c];
        double sum = 0.0;
        for (const auto& piece : channel.shares) {
            sum += piece.fraction;
            if (piece.fraction <= 0.0 || piece.fraction > 1.0 + kWidthEps)
                v.push_back("channel " + std::to_string(c) + " has a share outside (0, 1]");
        }
        if (channel.pu && !channel.shares.empty())
            v.push_back("channel " + std::to_string(c) + " mixes a PU with SU shares");
        if (sum > 1.0 + kWidthEps)
            v.push_back("channel " + std::to_string(c) + " oversubscribed: " + format_double(sum));
    }
    return v;
}

std::string to_json(const SpectrumMap& map) {
    std::ostringstream out;
    out << "{\"channels\":[";
    for (std::size_t c = 0; c < map.channels.size(); ++c) {
        if (c) out << ',';
        const auto& channel = map.channels[c];
        if (channel.pu) {
            out << "{\"use\":\"pu\"}";
        } else if (channel.shares.empty()) {
            out << "{\"use\":\"free\"}";
        } else {
            out << "{\"use\":\"su\",\"shares\":[";
            for (std::size_t k = 0; k < channel.shares.size(); ++k) {
                if (k) out << ',';
                out << '[' << channel.shares[k].su << ','
                    << format_double(channel.shares[k].fraction) << ']';
            }
            out << "]}";
        }
    }
    out << "]}";
    return out.str();
}

}  // namespace cafsim
