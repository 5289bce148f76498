/**
 * Singularity sequences S = (P_1, ..., P_n): each P_i a ring element (a
 * 0-dimensional *-ad) or the empty object.
 */
#ifndef ADSING_SINGULAR_SEQUENCE_HPP
#define ADSING_SINGULAR_SEQUENCE_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../ring.hpp"

namespace adsing
{

class SingularitySequence
{
public:
    SingularitySequence() = default;

    explicit SingularitySequence(std::vector<Value> entries)
        : entries_(std::move(entries)), dims_(entries_.size(), 0)
    {
    }

    SingularitySequence(std::vector<Value> entries, std::vector<int> dims)
        : entries_(std::move(entries)), dims_(std::move(dims))
    {
        if (dims_.size() != entries_.size())
            throw std::invalid_argument("SingularitySequence: one dimension tag per entry expected");
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] && dims_[i] != 0)
                throw std::invalid_argument("SingularitySequence: ring entries are 0-dimensional *-ads");
    }

    /// "2,3", "empty,2" or "" for the empty sequence.
    static SingularitySequence parse(const std::string& text)
    {
        std::vector<Value> entries;
        if (text.empty())
            return SingularitySequence();
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
        {
            if (item == "empty" || item == "∅")
                entries.emplace_back();
            else
            {
                Integer x;
                if (x.set_str(item, 10) != 0)
                    throw std::invalid_argument("SingularitySequence: bad entry '" + item + "'");
                entries.emplace_back(x);
            }
        }
        return SingularitySequence(std::move(entries));
    }

    std::size_t size() const { return entries_.size(); }
    const std::vector<Value>& entries() const { return entries_; }
    const std::vector<int>& dims() const { return dims_; }

    /// P_i, 1-indexed.
    const Value& entry(std::size_t i) const
    {
        if (i == 0 || i > entries_.size())
            throw std::out_of_range("SingularitySequence: no entry P_" + std::to_string(i));
        return entries_[i - 1];
    }

    int dim(std::size_t i) const { return dims_.at(i - 1); }

    SingularitySequence prefix(std::size_t m) const
    {
        if (m > entries_.size())
            throw std::out_of_range("SingularitySequence: prefix longer than the sequence");
        return SingularitySequence({entries_.begin(), entries_.begin() + static_cast<long>(m)},
                                   {dims_.begin(), dims_.begin() + static_cast<long>(m)});
    }

    SingularitySequence concat(const SingularitySequence& other) const
    {
        auto e = entries_;
        auto d = dims_;
        e.insert(e.end(), other.entries_.begin(), other.entries_.end());
        d.insert(d.end(), other.dims_.begin(), other.dims_.end());
        return SingularitySequence(e, d);
    }

    /// Agreement on the first m entries.
    bool agrees_with(const SingularitySequence& other, std::size_t m) const
    {
        if (entries_.size() < m || other.entries_.size() < m)
            return false;
        for (std::size_t i = 0; i < m; ++i)
            if (entries_[i] != other.entries_[i] || dims_[i] != other.dims_[i])
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i)
            s += (i ? "," : "") + value_to_string(entries_[i]);
        return s + ")";
    }

    friend bool operator==(const SingularitySequence& a, const SingularitySequence& b)
    {
        return a.entries_ == b.entries_ && a.dims_ == b.dims_;
    }

private:
    std::vector<Value> entries_;
    std::vector<int> dims_;
};

} // namespace adsing

#endif
