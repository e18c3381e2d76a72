#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vecpack {

// Absolute slack allowed on bin capacity checks.
inline constexpr double kEpsCap = 1e-9;
// Tolerance for invariants of LP-derived fractional matrices.
inline constexpr double kEpsNum = 1e-7;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One item's resource request, a point in [0,1]^d.
class ItemVector {
 public:
  explicit ItemVector(std::vector<double> coords);

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::span<const double> coords() const { return coords_; }

  double coord_sum() const;
  double max_coord() const;

 private:
  std::vector<double> coords_;
};

// A set of n items sharing dimension d. n may be zero.
class Instance {
 public:
  explicit Instance(std::size_t dimension, std::vector<ItemVector> items = {});
  // Convenience for literals: every row must have `dimension` entries.
  static Instance from_rows(std::size_t dimension,
                            const std::vector<std::vector<double>>& rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const ItemVector& item(std::size_t i) const { return items_[i]; }
  const std::vector<ItemVector>& items() const { return items_; }

  // Instance made of the listed items, in the listed order.
  Instance subset(std::span<const int> indices) const;

 private:
  std::size_t dimension_;
  std::vector<ItemVector> items_;
};

// Integral assignment: assignment[i] is the bin of item i.
struct Packing {
  std::vector<int> assignment;
  int bin_count = 0;

  friend bool operator==(const Packing&, const Packing&) = default;
};

struct CapacityViolation {
  int bin;
  std::size_t dimension;
  double load;
};

struct ValidationReport {
  std::vector<std::string> structural_errors;
  std::vector<CapacityViolation> violations;

  bool ok() const { return structural_errors.empty() && violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate_packing(const Instance& inst, const Packing& pk,
                                  double eps_cap = kEpsCap);

// max_k ceil(sum_i p_i^k); 0 for an empty instance.
int dimension_lower_bound(const Instance& inst);

// Relabel bins 0..m-1 in order of first use and drop empty ones.
Packing canonicalize(const Packing& pk);

// Items grouped per bin, in ascending item order.
std::vector<std::vector<int>> bin_members(const Packing& pk);

// Row-major n x m matrix used for both X and Z.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }
  double column_sum(std::size_t j) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// x_ij: fraction of item i placed in bin j.
struct FractionalAssignment {
  Matrix x;

  std::size_t items() const { return x.rows(); }
  std::size_t bins() const { return x.cols(); }
};

// z_ij multipliers with nonnegative entries and column sums <= 1.
struct DualMultipliers {
  Matrix z;
};

// Empty string when x is a valid fractional assignment for inst.
std::string check_fractional(const Instance& inst, const FractionalAssignment& x,
                             double eps = kEpsNum);
std::string check_dual(const DualMultipliers& z, double eps = kEpsNum);

struct Bounds {
  int lower = 0;
  int upper = 0;
};

bool fits(std::span<const double> load, const ItemVector& item,
          double eps_cap = kEpsCap);
void add_load(std::span<double> load, const ItemVector& item);

}  // namespace vecpack
