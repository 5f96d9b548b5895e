#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcbell {

/// Output or input tuple, one label per party, 0-based.
using Tuple = std::vector<int>;

/// A multi-party measurement scenario: per-party input and output counts.
///
/// Flattening convention used everywhere (tables, LP variables, JSON): party 0
/// is the most significant digit of a tuple index, and within a fixed input
/// tuple the output tuple varies fastest, i.e.
///   flat(x, a) = input_index(x) * output_count() + output_index(a).
class Scenario {
  public:
    Scenario(std::vector<int> inputs_per_party, std::vector<int> outputs_per_party)
        : inputs_(std::move(inputs_per_party)), outputs_(std::move(outputs_per_party)) {
        if (inputs_.empty() || inputs_.size() != outputs_.size())
            throw std::invalid_argument("scenario: per-party lists must be non-empty and equal length");
        for (int m : inputs_)
            if (m < 1) throw std::invalid_argument("scenario: input counts must be >= 1");
        for (int k : outputs_)
            if (k < 1) throw std::invalid_argument("scenario: output counts must be >= 1");
    }

    /// Uniform scenario: n parties, m inputs and k outputs each.
    static Scenario uniform(int n_parties, int m_inputs, int k_outputs) {
        if (n_parties < 1) throw std::invalid_argument("scenario: need at least one party");
        return Scenario(std::vector<int>(n_parties, m_inputs), std::vector<int>(n_parties, k_outputs));
    }

    int parties() const { return static_cast<int>(inputs_.size()); }
    const std::vector<int>& inputs() const { return inputs_; }
    const std::vector<int>& outputs() const { return outputs_; }
    int inputs_of(int party) const { return inputs_.at(party); }
    int outputs_of(int party) const { return outputs_.at(party); }

    std::size_t input_count() const { return count(inputs_); }
    std::size_t output_count() const { return count(outputs_); }
    std::size_t table_size() const { return input_count() * output_count(); }

    bool all_binary_outputs() const {
        for (int k : outputs_)
            if (k != 2) return false;
        return true;
    }

    std::size_t input_index(const Tuple& x) const { return index(x, inputs_, "input"); }
    std::size_t output_index(const Tuple& a) const { return index(a, outputs_, "output"); }
    Tuple input_tuple(std::size_t idx) const { return tuple(idx, inputs_); }
    Tuple output_tuple(std::size_t idx) const { return tuple(idx, outputs_); }

    std::size_t flat_index(const Tuple& x, const Tuple& a) const {
        return input_index(x) * output_count() + output_index(a);
    }

    bool operator==(const Scenario& o) const { return inputs_ == o.inputs_ && outputs_ == o.outputs_; }
    bool operator!=(const Scenario& o) const { return !(*this == o); }

  private:
    static std::size_t count(const std::vector<int>& radices) {
        std::size_t n = 1;
        for (int r : radices) n *= static_cast<std::size_t>(r);
        return n;
    }
    static std::size_t index(const Tuple& t, const std::vector<int>& radices, const char* what) {
        if (t.size() != radices.size())
            throw std::invalid_argument(std::string(what) + " tuple has wrong length");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < 0 || t[i] >= radices[i])
                throw std::out_of_range(std::string(what) + " label out of range at party " + std::to_string(i));
            idx = idx * static_cast<std::size_t>(radices[i]) + static_cast<std::size_t>(t[i]);
        }
        return idx;
    }
    static Tuple tuple(std::size_t idx, const std::vector<int>& radices) {
        Tuple t(radices.size(), 0);
        for (std::size_t i = radices.size(); i-- > 0;) {
            t[i] = static_cast<int>(idx % static_cast<std::size_t>(radices[i]));
            idx /= static_cast<std::size_t>(radices[i]);
        }
        return t;
    }

    std::vector<int> inputs_;
    std::vector<int> outputs_;
};

/// Iterates all tuples over the given radices in lexicographic order
/// (leftmost position most significant). Returns false when exhausted.
inline bool next_tuple(Tuple& t, const std::vector<int>& radices) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < radices[i]) return true;
        t[i] = 0;
    }
    return false;
}

}  // namespace rcbell
