#include "soccer/selfplay.hpp"

#include <algorithm>

namespace soccer {

void WinrateTracker::record(int adversary_id, bool win) {
    auto& q = outcomes_[adversary_id];
    q.push_back(win ? 1 : 0);
    while (static_cast<int>(q.size()) > window_) q.pop_front();
}

double WinrateTracker::rate(int adversary_id) const {
    auto it = outcomes_.find(adversary_id);
    if (it == outcomes_.end() || it->second.empty()) return 0.0;
    int wins = 0;
    for (uint8_t w : it->second) wins += w;
    return static_cast<double>(wins) / static_cast<double>(it->second.size());
}

int WinrateTracker::count(int adversary_id) const {
    auto it = outcomes_.find(adversary_id);
    return it == outcomes_.end() ? 0 : static_cast<int>(it->second.size());
}

double WinrateTracker::average_over(const std::vector<int>& ids) const {
    if (ids.empty()) return 0.0;
    double sum = 0.0;
    for (int id : ids) sum += rate(id);
    return sum / static_cast<double>(ids.size());
}

bool WinrateTracker::all_have_at_least(const std::vector<int>& ids, int n) const {
    return std::all_of(ids.begin(), ids.end(),
                       [&](int id) { return count(id) >= n; });
}

void WinrateTracker::forget(int adversary_id) { outcomes_.erase(adversary_id); }

int SelfPlayPool::add(const ActorCritic& net, int* evicted) {
    if (evicted) *evicted = -1;
    int id = next_id_++;
    snapshots_.emplace_back(id, std::make_shared<const ActorCritic>(net));
    if (static_cast<int>(snapshots_.size()) > capacity_) {
        if (evicted) *evicted = snapshots_.front().first;
        snapshots_.pop_front();
    }
    return id;
}

const ActorCritic* SelfPlayPool::find(int id) const {
    for (const auto& [sid, snap] : snapshots_)
        if (sid == id) return snap.get();
    return nullptr;
}

std::shared_ptr<const ActorCritic> SelfPlayPool::find_shared(int id) const {
    for (const auto& [sid, snap] : snapshots_)
        if (sid == id) return snap;
    return nullptr;
}

std::vector<int> SelfPlayPool::ids() const {
    std::vector<int> out;
    for (const auto& [sid, snap] : snapshots_) out.push_back(sid);
    return out;
}

void SelfPlayPool::restore(std::vector<std::pair<int, ActorCritic>> snapshots,
                           int next_id) {
    snapshots_.clear();
    for (auto& [id, net] : snapshots)
        snapshots_.emplace_back(id,
                                std::make_shared<const ActorCritic>(std::move(net)));
    next_id_ = next_id;
}

void update_levels(EnvCurriculum& cur, Outcome outcome, Team trainee,
                   int max_init_level, int max_field_level) {
    int delta = 0;
    if (outcome == Outcome::Timeout) delta = 0;
    else if ((outcome == Outcome::BlueWin) == (trainee == Team::Blue)) delta = 1;
    else delta = -1;
    cur.init_pos_level =
        std::clamp(cur.init_pos_level + delta, 0, max_init_level);
    cur.field_level = std::clamp(cur.field_level + delta, 0, max_field_level);
}

double ball_band_far_edge(int level, int max_level, double min_frac) {
    if (max_level <= 0) return 1.0;
    double t = static_cast<double>(std::clamp(level, 0, max_level)) / max_level;
    return min_frac + (1.0 - min_frac) * t;
}

double field_scale_for_level(int level, int max_level, double min_scale) {
    if (max_level <= 0) return 1.0;
    double t = static_cast<double>(std::clamp(level, 0, max_level)) / max_level;
    return min_scale + (1.0 - min_scale) * t;
}

int sample_adversary(const SelfPlayPool& pool, bool include_bot, Rng& rng) {
    std::vector<int> ids = pool.ids();
    if (include_bot || ids.empty()) ids.insert(ids.begin(), kBotAdversaryId);
    return ids[rng.uniform_int(0, static_cast<int>(ids.size()) - 1)];
}

}  // namespace soccer
