#ifndef FASE_ACTION_HPP
#define FASE_ACTION_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace fase {

// The internal action tau is encoded as the empty name.
struct ActionLabel {
    std::string name;

    bool is_tau() const { return name.empty(); }
    bool is_visible() const { return !name.empty(); }

    static ActionLabel tau() { return ActionLabel{}; }
    static ActionLabel visible(std::string n) { return ActionLabel{std::move(n)}; }

    bool operator==(const ActionLabel& o) const { return name == o.name; }
    bool operator!=(const ActionLabel& o) const { return name != o.name; }
    bool operator<(const ActionLabel& o) const { return name < o.name; }

    std::string str() const { return is_tau() ? "tau" : name; }
};

inline const std::string kOmega = "omega";
inline const std::string kIn = "in";
inline const std::string kOut = "out";

// Finite universe of visible action names relevant to one analysis
// (the sort of the root process). Indices are stable and sorted by name.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    // -1 if the name is not part of the alphabet.
    int index_of(const std::string& n) const;
    bool contains(const std::string& n) const { return index_of(n) >= 0; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

// Subset of an Alphabet, as a bitset.
class ActionSet {
public:
    ActionSet() = default;
    explicit ActionSet(int universe) : size_(universe), bits_((universe + 63) / 64, 0) {}

    static ActionSet none(int universe) { return ActionSet(universe); }
    static ActionSet full(int universe);

    int universe_size() const { return size_; }
    void add(int i) { bits_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void remove(int i) { bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool contains(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }

    ActionSet& operator&=(const ActionSet& o);
    ActionSet& operator|=(const ActionSet& o);
    bool subset_of(const ActionSet& o) const;
    bool operator==(const ActionSet& o) const { return size_ == o.size_ && bits_ == o.bits_; }
    bool operator!=(const ActionSet& o) const { return !(*this == o); }
    int count() const;
    bool empty() const { return count() == 0; }

    bool is_full() const { return count() == size_; }

    // Names, sorted by alphabet index.
    std::vector<std::string> names(const Alphabet& a) const;
    std::string str(const Alphabet& a) const;

private:
    int size_ = 0;
    std::vector<std::uint64_t> bits_;
};

ActionSet operator&(ActionSet a, const ActionSet& b);
ActionSet operator|(ActionSet a, const ActionSet& b);

}  // namespace fase

#endif
