#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace orient {

// Entries b_{2k} for half-weights first() <= k <= last(); odd weights are implicitly zero.
template <class T>
class EvenSeq {
public:
    EvenSeq() = default;
    EvenSeq(unsigned first_half_weight, std::vector<T> entries)
        : first_(first_half_weight), entries_(std::move(entries)) {}

    unsigned first() const { return first_; }
    unsigned last() const
    {
        if (entries_.empty())
            throw std::out_of_range("empty sequence has no last entry");
        return first_ + static_cast<unsigned>(entries_.size()) - 1;
    }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool contains(unsigned k) const { return k >= first_ && k - first_ < entries_.size(); }

    const T& at(unsigned k) const { return entries_.at(index(k)); }
    T& at(unsigned k) { return entries_.at(index(k)); }
    const std::vector<T>& entries() const { return entries_; }
    void push_back(T value) { entries_.push_back(std::move(value)); }

    // Entries with half-weight in [from, to].
    EvenSeq slice(unsigned from, unsigned to) const
    {
        if (from < first_ || (to >= from && !contains(to)))
            throw std::out_of_range("slice outside the stored range");
        std::vector<T> out;
        for (unsigned k = from; k <= to; ++k)
            out.push_back(at(k));
        return EvenSeq(from, std::move(out));
    }

    template <class F>
    auto map(F f) const
    {
        using U = decltype(f(first_, entries_.front()));
        std::vector<U> out;
        out.reserve(entries_.size());
        for (size_t i = 0; i < entries_.size(); ++i)
            out.push_back(f(first_ + static_cast<unsigned>(i), entries_[i]));
        return EvenSeq<U>(first_, std::move(out));
    }

    friend bool operator==(const EvenSeq&, const EvenSeq&) = default;

private:
    size_t index(unsigned k) const
    {
        if (!contains(k))
            throw std::out_of_range("half-weight " + std::to_string(k) + " not stored");
        return k - first_;
    }

    unsigned first_ = 0;
    std::vector<T> entries_;
};

}  // namespace orient
