#ifndef HYPERMOMENT_MEASURE_HPP
#define HYPERMOMENT_MEASURE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "hypermoment/scalar.hpp"

namespace hypermoment {

/// Finitely supported measure on N. Atoms of weight zero are never stored,
/// so equality of measures is equality of the atom maps.
class Measure {
public:
    using atom_map = std::map<std::uint64_t, Scalar>;

    Measure() = default;

    static Measure delta(std::uint64_t n, Scalar weight = Scalar(1))
    {
        Measure m;
        m.add(n, weight);
        return m;
    }

    /// Adds `weight` to the atom at `n`, dropping it if it cancels.
    void add(std::uint64_t n, const Scalar& weight)
    {
        if (weight.is_zero())
            return;
        auto [it, inserted] = atoms_.try_emplace(n, weight);
        if (!inserted) {
            it->second += weight;
            if (it->second.is_zero())
                atoms_.erase(it);
        }
    }

    const atom_map& atoms() const noexcept { return atoms_; }
    bool empty() const noexcept { return atoms_.empty(); }
    std::size_t size() const noexcept { return atoms_.size(); }

    Scalar weight(std::uint64_t n) const
    {
        auto it = atoms_.find(n);
        return it == atoms_.end() ? Scalar(0) : it->second;
    }

    std::optional<std::uint64_t> min_support() const
    {
        if (atoms_.empty())
            return std::nullopt;
        return atoms_.begin()->first;
    }

    std::optional<std::uint64_t> max_support() const
    {
        if (atoms_.empty())
            return std::nullopt;
        return atoms_.rbegin()->first;
    }

    Measure& operator+=(const Measure& rhs)
    {
        for (const auto& [n, w] : rhs.atoms_)
            add(n, w);
        return *this;
    }

    Measure& operator-=(const Measure& rhs)
    {
        for (const auto& [n, w] : rhs.atoms_)
            add(n, -w);
        return *this;
    }

    Measure& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            atoms_.clear();
            return *this;
        }
        for (auto& [n, w] : atoms_)
            w *= s;
        return *this;
    }

    Measure& operator/=(const Scalar& s)
    {
        for (auto& [n, w] : atoms_)
            w /= s;
        return *this;
    }

    friend Measure operator+(Measure a, const Measure& b) { return a += b; }
    friend Measure operator-(Measure a, const Measure& b) { return a -= b; }
    friend Measure operator*(Measure a, const Scalar& s) { return a *= s; }
    friend Measure operator*(const Scalar& s, Measure a) { return a *= s; }

    friend bool operator==(const Measure&, const Measure&) = default;

private:
    atom_map atoms_;
};

inline Measure measure_add(const Measure& a, const Measure& b) { return a + b; }
inline Measure measure_scale(const Measure& a, const Scalar& s) { return a * s; }

inline Scalar measure_total(const Measure& mu)
{
    Scalar total(0);
    for (const auto& [n, w] : mu.atoms())
        total += w;
    return total;
}

} // namespace hypermoment

#endif
