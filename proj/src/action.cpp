#include "fase/action.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace fase {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    for (int i = 0; i < static_cast<int>(names_.size()); ++i)
        index_[names_[i]] = i;
}

int Alphabet::index_of(const std::string& n) const {
    auto it = index_.find(n);
    return it == index_.end() ? -1 : it->second;
}

ActionSet ActionSet::full(int universe) {
    ActionSet s(universe);
    for (int i = 0; i < universe; ++i) s.add(i);
    return s;
}

ActionSet& ActionSet::operator&=(const ActionSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
}

ActionSet& ActionSet::operator|=(const ActionSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
}

bool ActionSet::subset_of(const ActionSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~o.bits_[i]) return false;
    return true;
}

int ActionSet::count() const {
    int c = 0;
    for (auto w : bits_) c += std::popcount(w);
    return c;
}

std::vector<std::string> ActionSet::names(const Alphabet& a) const {
    std::vector<std::string> out;
    for (int i = 0; i < size_; ++i)
        if (contains(i)) out.push_back(a.name(i));
    return out;
}

std::string ActionSet::str(const Alphabet& a) const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& n : names(a)) {
        if (!first) os << ',';
        os << n;
        first = false;
    }
    os << '}';
    return os.str();
}

ActionSet operator&(ActionSet a, const ActionSet& b) { a &= b; return a; }
ActionSet operator|(ActionSet a, const ActionSet& b) { a |= b; return a; }

}  // namespace fase
