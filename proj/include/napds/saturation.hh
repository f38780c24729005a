// Forward saturation for control-state reachability, in summary form.
//
// Facts:
//   head(p, a)       some reachable configuration has control p and top a
//   item(r, i, q)    rule r fired from one of its heads and the first i
//                    symbols it pushed have been popped, arriving at q
//   summary(p, a, q) <p, a> can pop a and arrive in control q
//
// Every fact keeps the first justification found, which gives an acyclic
// derivation that unfolds into a replayable rule trace. The system is queried
// lazily, so controls may be created on demand (the parameterised product).
//
// A System provides
//   ControlId initial_control();
//   std::vector<SaturationRule> rules_from(ControlId, SymbolId);
#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "napds/detail/hash.hh"
#include "napds/errors.hh"
#include "napds/pds.hh"

namespace napds {

struct SaturationRule {
    RuleId id;
    ControlId to;
    Word push;
};

struct SaturationLimits {
    std::size_t max_facts = 50'000'000;
    std::size_t max_trace = 10'000'000;
};

template <typename System>
class Saturation {
public:
    using TargetPredicate = std::function<bool(ControlId)>;

    Saturation(System& system, TargetPredicate is_target, SaturationLimits limits = {})
        : system_(system), is_target_(std::move(is_target)), limits_(limits) {}

    /// Runs until a target head appears or the fixpoint is reached.
    bool run() {
        found_ = head(system_.initial_control(), kBottom, kNone);
        while (found_ == kNone && !work_.empty()) {
            std::uint32_t item = work_.front();
            work_.pop_front();
            process(item);
        }
        return found_ != kNone;
    }

    bool reached() const { return found_ != kNone; }
    std::size_t num_heads() const { return heads_.size(); }

    /// Rule ids from <initial, $> to a configuration with a target control.
    std::vector<RuleId> trace() const {
        if (found_ == kNone)
            return {};
        std::vector<std::uint32_t> chain;  // origin items, last first
        for (std::uint32_t h = found_; heads_[h].origin != kNone;
             h = items_[heads_[h].origin].owner)
            chain.push_back(heads_[h].origin);
        std::vector<RuleId> out;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            unfold(*it, out);
        return out;
    }

private:
    static constexpr std::uint32_t kNone = static_cast<std::uint32_t>(-1);

    struct Head {
        ControlId control;
        SymbolId top;
        std::uint32_t origin;  // item that exposed this head, kNone for the initial one
        std::vector<SaturationRule> rules;
        std::vector<std::pair<ControlId, std::uint32_t>> summaries;  // (target, summary id)
        std::vector<std::uint32_t> waiters;  // items blocked on popping this head
    };
    struct Item {
        std::uint32_t owner;  // head the rule fired from
        std::uint32_t rule;   // index into owner's rules
        std::uint32_t pos;
        ControlId control;
        std::uint32_t prev;     // item at pos - 1, kNone when pos == 0
        std::uint32_t summary;  // summary that advanced prev, kNone when pos == 0
    };
    struct Summary {
        std::uint32_t head;
        ControlId target;
        std::uint32_t via;  // completed item
    };
    struct ItemKey {
        std::uint32_t owner, rule, pos;
        ControlId control;
        bool operator==(const ItemKey&) const = default;
    };
    struct ItemKeyHash {
        std::size_t operator()(const ItemKey& k) const noexcept {
            std::size_t seed = k.owner;
            detail::hash_combine(seed, k.rule);
            detail::hash_combine(seed, k.pos);
            detail::hash_combine(seed, k.control);
            return seed;
        }
    };

    void check_budget() const {
        if (heads_.size() + items_.size() + summaries_.size() > limits_.max_facts)
            throw ResourceLimitError("saturation", "fact count exceeded " + std::to_string(limits_.max_facts));
    }

    /// Returns the head id if it is new and a target, kNone otherwise.
    std::uint32_t head(ControlId control, SymbolId top, std::uint32_t origin) {
        auto [it, inserted] = head_index_.try_emplace({control, top}, static_cast<std::uint32_t>(heads_.size()));
        if (!inserted)
            return kNone;
        check_budget();
        const std::uint32_t id = it->second;
        heads_.push_back(Head{control, top, origin, system_.rules_from(control, top), {}, {}});
        if (is_target_(control))
            return id;
        for (std::uint32_t r = 0; r < heads_[id].rules.size(); ++r)
            add_item(id, r, 0, heads_[id].rules[r].to, kNone, kNone);
        return kNone;
    }

    void add_item(std::uint32_t owner, std::uint32_t rule, std::uint32_t pos, ControlId control,
                  std::uint32_t prev, std::uint32_t summary) {
        auto [it, inserted] = item_index_.try_emplace(ItemKey{owner, rule, pos, control},
                                                      static_cast<std::uint32_t>(items_.size()));
        if (!inserted)
            return;
        check_budget();
        items_.push_back(Item{owner, rule, pos, control, prev, summary});
        work_.push_back(it->second);
    }

    void process(std::uint32_t id) {
        const Item item = items_[id];
        const SaturationRule& rule = heads_[item.owner].rules[item.rule];
        if (item.pos == rule.push.size()) {
            add_summary(item.owner, item.control, id);
            return;
        }
        const SymbolId next = rule.push[item.pos];
        if (auto hit = head(item.control, next, id); hit != kNone) {
            found_ = hit;
            return;
        }
        const std::uint32_t h = head_index_.at({item.control, next});
        heads_[h].waiters.push_back(id);
        // copy: add_item below never touches summaries, but keep it obviously safe
        auto known = heads_[h].summaries;
        for (auto [target, sid] : known)
            add_item(item.owner, item.rule, item.pos + 1, target, id, sid);
    }

    void add_summary(std::uint32_t h, ControlId target, std::uint32_t via) {
        if (!summary_index_.emplace(h, target).second)
            return;
        const auto sid = static_cast<std::uint32_t>(summaries_.size());
        summaries_.push_back(Summary{h, target, via});
        heads_[h].summaries.emplace_back(target, sid);
        auto waiters = heads_[h].waiters;
        for (std::uint32_t w : waiters)
            add_item(items_[w].owner, items_[w].rule, items_[w].pos + 1, target, w, sid);
    }

    /// Appends the rule ids that realise `item`: the rule itself followed by
    /// the runs popping each of the first pos pushed symbols.
    void unfold(std::uint32_t item, std::vector<RuleId>& out) const {
        std::vector<std::uint32_t> stack{item};
        while (!stack.empty()) {
            const Item& it = items_[stack.back()];
            stack.pop_back();
            if (it.pos == 0) {
                out.push_back(heads_[it.owner].rules[it.rule].id);
                if (out.size() > limits_.max_trace)
                    throw ResourceLimitError("saturation", "witness trace longer than " +
                                                               std::to_string(limits_.max_trace));
                continue;
            }
            stack.push_back(summaries_[it.summary].via);
            stack.push_back(it.prev);
        }
    }

    System& system_;
    TargetPredicate is_target_;
    SaturationLimits limits_;
    std::vector<Head> heads_;
    std::vector<Item> items_;
    std::vector<Summary> summaries_;
    std::unordered_map<std::pair<ControlId, SymbolId>, std::uint32_t, detail::PairHash> head_index_;
    std::unordered_map<ItemKey, std::uint32_t, ItemKeyHash> item_index_;
    std::unordered_set<std::pair<std::uint32_t, ControlId>, detail::PairHash> summary_index_;
    std::deque<std::uint32_t> work_;
    std::uint32_t found_ = kNone;
};

}  // namespace napds
