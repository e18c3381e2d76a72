#include "vecpack/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace vecpack {

ItemVector::ItemVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InputError("item vector must have at least one coordinate");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const double c = coords_[k];
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
      std::ostringstream msg;
      msg << "coordinate " << k << " = " << c << " is outside [0,1]";
      throw InputError(msg.str());
    }
  }
}

double ItemVector::coord_sum() const {
  return std::accumulate(coords_.begin(), coords_.end(), 0.0);
}

double ItemVector::max_coord() const {
  return *std::max_element(coords_.begin(), coords_.end());
}

Instance::Instance(std::size_t dimension, std::vector<ItemVector> items)
    : dimension_(dimension), items_(std::move(items)) {
  if (dimension_ == 0) throw InputError("dimension must be positive");
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].dimension() != dimension_) {
      std::ostringstream msg;
      msg << "item " << i << " has " << items_[i].dimension()
          << " coordinates, expected " << dimension_;
      throw InputError(msg.str());
    }
  }
}

Instance Instance::from_rows(std::size_t dimension,
                             const std::vector<std::vector<double>>& rows) {
  std::vector<ItemVector> items;
  items.reserve(rows.size());
  for (const auto& r : rows) items.emplace_back(r);
  return Instance(dimension, std::move(items));
}

Instance Instance::subset(std::span<const int> indices) const {
  std::vector<ItemVector> items;
  items.reserve(indices.size());
  for (int i : indices) items.push_back(items_.at(static_cast<std::size_t>(i)));
  return Instance(dimension_, std::move(items));
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (const auto& e : structural_errors) out << "structural: " << e << "\n";
  for (const auto& v : violations) {
    out << "bin " << v.bin << " dimension " << v.dimension << " load " << v.load
        << " exceeds capacity by " << (v.load - 1.0) << "\n";
  }
  return out.str();
}

ValidationReport validate_packing(const Instance& inst, const Packing& pk,
                                  double eps_cap) {
  ValidationReport report;
  const std::size_t n = inst.size();
  if (pk.assignment.size() != n) {
    report.structural_errors.push_back(
        "assignment covers " + std::to_string(pk.assignment.size()) +
        " items, instance has " + std::to_string(n));
    return report;
  }
  if (pk.bin_count < 0 || (n > 0 && pk.bin_count == 0)) {
    report.structural_errors.push_back("invalid bin count " +
                                       std::to_string(pk.bin_count));
    return report;
  }
  const std::size_t d = inst.dimension();
  std::vector<double> loads(static_cast<std::size_t>(pk.bin_count) * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const int b = pk.assignment[i];
    if (b < 0 || b >= pk.bin_count) {
      report.structural_errors.push_back("item " + std::to_string(i) +
                                         " assigned to bin " + std::to_string(b) +
                                         " outside 0.." +
                                         std::to_string(pk.bin_count - 1));
      continue;
    }
    add_load({loads.data() + static_cast<std::size_t>(b) * d, d}, inst.item(i));
  }
  if (!report.structural_errors.empty()) return report;
  for (int b = 0; b < pk.bin_count; ++b) {
    for (std::size_t k = 0; k < d; ++k) {
      const double load = loads[static_cast<std::size_t>(b) * d + k];
      if (load > 1.0 + eps_cap) report.violations.push_back({b, k, load});
    }
  }
  return report;
}

int dimension_lower_bound(const Instance& inst) {
  if (inst.empty()) return 0;
  std::vector<double> sums(inst.dimension(), 0.0);
  for (const auto& item : inst.items()) add_load(sums, item);
  // A packing into m bins may carry m * kEpsCap of slack in total.
  const double slack = kEpsCap * static_cast<double>(inst.size());
  int bound = 1;
  for (double s : sums) bound = std::max(bound, static_cast<int>(std::ceil(s - slack)));
  return bound;
}

Packing canonicalize(const Packing& pk) {
  std::unordered_map<int, int> relabel;
  Packing out;
  out.assignment.reserve(pk.assignment.size());
  for (int b : pk.assignment) {
    auto [it, inserted] = relabel.try_emplace(b, static_cast<int>(relabel.size()));
    out.assignment.push_back(it->second);
  }
  out.bin_count = static_cast<int>(relabel.size());
  return out;
}

std::vector<std::vector<int>> bin_members(const Packing& pk) {
  std::vector<std::vector<int>> bins(static_cast<std::size_t>(std::max(pk.bin_count, 0)));
  for (std::size_t i = 0; i < pk.assignment.size(); ++i) {
    const int b = pk.assignment[i];
    if (b >= 0 && b < pk.bin_count) bins[static_cast<std::size_t>(b)].push_back(static_cast<int>(i));
  }
  return bins;
}

double Matrix::column_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

std::string check_fractional(const Instance& inst, const FractionalAssignment& fa,
                             double eps) {
  const Matrix& x = fa.x;
  if (x.rows() != inst.size()) return "row count does not match instance size";
  std::ostringstream err;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j) < -eps) {
        err << "x(" << i << "," << j << ") = " << x(i, j) << " is negative";
        return err.str();
      }
      s += x(i, j);
    }
    if (std::abs(s - 1.0) > eps) {
      err << "row " << i << " sums to " << s;
      return err.str();
    }
  }
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t k = 0; k < inst.dimension(); ++k) {
      double load = 0.0;
      for (std::size_t i = 0; i < x.rows(); ++i) load += inst.item(i)[k] * x(i, j);
      if (load > 1.0 + eps) {
        err << "bin " << j << " dimension " << k << " fractional load " << load;
        return err.str();
      }
    }
  }
  return {};
}

std::string check_dual(const DualMultipliers& dual, double eps) {
  const Matrix& z = dual.z;
  std::ostringstream err;
  for (std::size_t j = 0; j < z.cols(); ++j) {
    for (std::size_t i = 0; i < z.rows(); ++i) {
      if (z(i, j) < 0.0) {
        err << "z(" << i << "," << j << ") is negative";
        return err.str();
      }
    }
    const double s = z.column_sum(j);
    if (s > 1.0 + eps) {
      err << "column " << j << " sums to " << s;
      return err.str();
    }
  }
  return {};
}

bool fits(std::span<const double> load, const ItemVector& item, double eps_cap) {
  for (std::size_t k = 0; k < load.size(); ++k) {
    if (load[k] + item[k] > 1.0 + eps_cap) return false;
  }
  return true;
}

void add_load(std::span<double> load, const ItemVector& item) {
  for (std::size_t k = 0; k < load.size(); ++k) load[k] += item[k];
}

}  // namespace vecpack
