#pragma once

#include <stdexcept>
#include <string>

namespace folspace {

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration or materialization would exceed the configured element budget.
struct budget_exceeded : error {
  std::string size;  // offending set size, decimal
  explicit budget_exceeded(std::string sz)
      : error("enumeration budget exceeded: set of size " + sz), size(std::move(sz)) {}
};

// An exact count would exceed the configured bit-length cap.
struct result_too_large : error {
  explicit result_too_large(const std::string& detail)
      : error("exact count too large: " + detail) {}
};

struct parse_error : error {
  size_t position;
  parse_error(const std::string& what, size_t pos)
      : error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

struct rank_too_high : error {
  explicit rank_too_high(const std::string& d) : error("formula rank exceeds constituent rank: " + d) {}
};

struct free_variable_escape : error {
  explicit free_variable_escape(const std::string& v) : error("free variable outside context: " + v) {}
};

struct rank_mismatch : error {
  explicit rank_mismatch(const std::string& d) : error("rank mismatch: " + d) {}
};

struct rank_zero : error {
  rank_zero() : error("operation requires rank >= 1") {}
};

struct vocabulary_mismatch : error {
  explicit vocabulary_mismatch(const std::string& d) : error("vocabulary mismatch: " + d) {}
};

struct not_a_node : error {
  explicit not_a_node(const std::string& d) : error("constituent is not a tree node: " + d) {}
};

struct anchor_not_in_tree : error {
  anchor_not_in_tree() : error("basic open anchored in a different tree") {}
};

struct not_a_probability : error {
  explicit not_a_probability(const std::string& d) : error("not a probability mass: " + d) {}
};

struct non_positive_entry : error {
  non_positive_entry() : error("entropy requires strictly positive coordinates") {}
};

struct basis_mismatch : error {
  explicit basis_mismatch(const std::string& d) : error("component basis mismatch: " + d) {}
};

struct negative_belief : error {
  negative_belief() : error("beliefs must be nonnegative") {}
};

struct invalid_counts : error {
  explicit invalid_counts(const std::string& d) : error("invalid counts: " + d) {}
};

struct representation_not_dense : error {
  representation_not_dense() : error("operation requires a dense layer representation") {}
};

struct models_not_distinct : error {
  models_not_distinct() : error("models do not satisfy pairwise distinct constituents") {}
};

}  // namespace folspace
