// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "impslice/ast.hpp"
#include "impslice/lattice.hpp"

namespace impslice {

// Every element of a downset is determined by which positions of the top
// element it keeps. Numbering the syntax nodes of the top program in preorder
// (the same numbering `render_with_spans` uses) and then the state variables
// turns each element into a bitmask, and the prefix order into set inclusion.

/// Row-major bitmask rows. Rows of up to 64 bits take one word each;
/// wider rows are padded to a multiple of 4 words so vector kernels can read
/// whole 256-bit lanes.
class MaskMatrix {
  public:
    MaskMatrix() = default;
    MaskMatrix(std::size_t rows, std::size_t bits);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t bits() const { return bits_; }
    [[nodiscard]] std::size_t words() const { return words_; }
    [[nodiscard]] std::uint64_t* row(std::size_t i) { return data_.data() + i * words_; }
    [[nodiscard]] const std::uint64_t* row(std::size_t i) const { return data_.data() + i * words_; }

    void set(std::size_t row, std::size_t bit) { this->row(row)[bit / 64] |= std::uint64_t{1} << (bit % 64); }
    [[nodiscard]] bool test(std::size_t row, std::size_t bit) const {
        return ((this->row(row)[bit / 64] >> (bit % 64)) & 1U) != 0;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t bits_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Preorder positions of a top program followed by the variables of a
/// domain.
class Layout {
  public:
    Layout(const Command& program, StateDomain domain);

    [[nodiscard]] std::size_t program_nodes() const { return subtree_size_.size(); }
    [[nodiscard]] std::size_t variables() const { return domain_.size(); }
    [[nodiscard]] std::size_t bits() const { return program_nodes() + variables(); }
    /// Preorder index of a node's parent; the root has none.
    [[nodiscard]] std::optional<std::size_t> parent(std::size_t node) const;

    // Callers pass elements of the downset; shapes are not re-validated.
    void encode(const SliceOutcome& p, std::uint64_t* row) const;
    /// Program positions only.
    void encode(const PartialCommand& p, std::uint64_t* row) const;
    /// State-only encoding; variable i lands on bit i.
    static void encode(const PartialState& s, std::uint64_t* row);

    /// Preorder indices of the maximal holes of `p` relative to the top.
    [[nodiscard]] std::vector<std::size_t> hole_roots(const PartialCommand& p) const;

  private:
    Command program_;
    StateDomain domain_;
    std::vector<std::size_t> subtree_size_;
    std::vector<std::size_t> parent_;
};

} // namespace impslice
