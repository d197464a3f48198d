#include "monoapprox/order.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monoapprox {

namespace {

std::vector<std::uint8_t> flatten(const std::vector<std::vector<int>>& relation) {
  const size_t n = relation.size();
  if (n == 0) {
    raise(ErrorKind::Schema, "relation matrix is empty");
  }
  std::vector<std::uint8_t> bits(n * n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (relation[i].size() != n) {
      raise(ErrorKind::Schema, "relation matrix must be square, row " +
                                   std::to_string(i) + " has " +
                                   std::to_string(relation[i].size()) +
                                   " entries for size " + std::to_string(n));
    }
    for (size_t j = 0; j < n; ++j) {
      bits[i * n + j] = relation[i][j] != 0;
    }
  }
  return bits;
}

void require_same_size(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) {
    raise(ErrorKind::SizeMismatch, "functions have sizes " +
                                       std::to_string(f.size()) + " and " +
                                       std::to_string(g.size()));
  }
}

}  // namespace

GridFunction grid_function(std::vector<double> values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      raise(ErrorKind::Schema,
            "non-finite value at index " + std::to_string(i));
    }
  }
  return GridFunction(std::move(values));
}

FinitePreorder FinitePreorder::validate(
    const std::vector<std::vector<int>>& relation) {
  const int n = static_cast<int>(relation.size());
  std::vector<std::uint8_t> bits = flatten(relation);
  const auto at = [&](int x, int y) {
    return bits[static_cast<size_t>(x) * n + y] != 0;
  };
  for (int x = 0; x < n; ++x) {
    if (!at(x, x)) {
      raise(ErrorKind::NotReflexive, "(" + std::to_string(x) + ")");
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!at(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (at(y, z) && !at(x, z)) {
          raise(ErrorKind::NotTransitive, "(" + std::to_string(x) + "," +
                                              std::to_string(y) + "," +
                                              std::to_string(z) + ")");
        }
      }
    }
  }
  return FinitePreorder(n, std::move(bits));
}

FinitePreorder FinitePreorder::closure(
    const std::vector<std::vector<int>>& relation) {
  const int n = static_cast<int>(relation.size());
  std::vector<std::uint8_t> bits = flatten(relation);
  for (int x = 0; x < n; ++x) bits[static_cast<size_t>(x) * n + x] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!bits[static_cast<size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j) {
        if (bits[static_cast<size_t>(k) * n + j]) {
          bits[static_cast<size_t>(i) * n + j] = 1;
        }
      }
    }
  }
  return FinitePreorder(n, std::move(bits));
}

FinitePreorder FinitePreorder::discrete(int n) {
  if (n < 1) raise(ErrorKind::InvalidParameter, "size must be positive");
  std::vector<std::uint8_t> bits(static_cast<size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) bits[static_cast<size_t>(x) * n + x] = 1;
  return FinitePreorder(n, std::move(bits));
}

FinitePreorder FinitePreorder::full(int n) {
  if (n < 1) raise(ErrorKind::InvalidParameter, "size must be positive");
  return FinitePreorder(n, std::vector<std::uint8_t>(static_cast<size_t>(n) * n, 1));
}

bool FinitePreorder::antisymmetric() const {
  for (int x = 0; x < size_; ++x) {
    for (int y = x + 1; y < size_; ++y) {
      if (leq(x, y) && leq(y, x)) return false;
    }
  }
  return true;
}

FunctionFamily make_family(std::vector<GridFunction> generators) {
  if (generators.empty()) {
    raise(ErrorKind::Schema, "family needs at least one generator");
  }
  const int n = generators.front().size();
  if (n == 0) raise(ErrorKind::Schema, "generators must be non-empty");
  for (size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].size() != n) {
      raise(ErrorKind::SizeMismatch,
            "generator " + std::to_string(g) + " has size " +
                std::to_string(generators[g].size()) + ", expected " +
                std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(generators[g][i])) {
        raise(ErrorKind::Schema, "generator " + std::to_string(g) +
                                     " has a non-finite value at index " +
                                     std::to_string(i));
      }
    }
  }
  return FunctionFamily(std::move(generators));
}

bool is_isotone(const FinitePreorder& order, const GridFunction& f) {
  if (order.size() != f.size()) {
    raise(ErrorKind::SizeMismatch, "order has size " +
                                       std::to_string(order.size()) +
                                       ", function has size " +
                                       std::to_string(f.size()));
  }
  for (int x = 0; x < order.size(); ++x) {
    for (int y = 0; y < order.size(); ++y) {
      if (order.leq(x, y) && !(f[x] <= f[y])) return false;
    }
  }
  return true;
}

FinitePreorder order_from_family(int size, const FunctionFamily& family) {
  if (family.point_count() != size) {
    raise(ErrorKind::SizeMismatch, "family is defined on " +
                                       std::to_string(family.point_count()) +
                                       " points, expected " +
                                       std::to_string(size));
  }
  std::vector<std::uint8_t> bits(static_cast<size_t>(size) * size, 0);
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) {
      bool related = true;
      for (const GridFunction& g : family.generators()) {
        if (!(g[x] <= g[y])) {
          related = false;
          break;
        }
      }
      bits[static_cast<size_t>(x) * size + y] = related;
    }
  }
  return FinitePreorder(size, std::move(bits));
}

std::vector<int> common_zero_set(const FunctionFamily& family) {
  std::vector<int> zeros;
  for (int x = 0; x < family.point_count(); ++x) {
    bool all_zero = true;
    for (const GridFunction& g : family.generators()) {
      if (g[x] != 0.0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) zeros.push_back(x);
  }
  return zeros;
}

bool generates(const FinitePreorder& order, const FunctionFamily& family) {
  return order == order_from_family(order.size(), family);
}

FinitePreorder product_order_grid(
    const std::vector<std::vector<double>>& points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) raise(ErrorKind::InvalidParameter, "point list is empty");
  const size_t dim = points.front().size();
  for (int i = 0; i < n; ++i) {
    if (points[static_cast<size_t>(i)].size() != dim) {
      raise(ErrorKind::DimensionMismatch,
            "point " + std::to_string(i) + " has dimension " +
                std::to_string(points[static_cast<size_t>(i)].size()) +
                ", expected " + std::to_string(dim));
    }
  }
  std::vector<std::uint8_t> bits(static_cast<size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      bool le = true;
      for (size_t k = 0; k < dim; ++k) {
        if (!(points[static_cast<size_t>(x)][k] <=
              points[static_cast<size_t>(y)][k])) {
          le = false;
          break;
        }
      }
      bits[static_cast<size_t>(x) * n + y] = le;
    }
  }
  return FinitePreorder(n, std::move(bits));
}

GridFunction add(const GridFunction& f, const GridFunction& g) {
  require_same_size(f, g);
  GridFunction out = f;
  for (int i = 0; i < g.size(); ++i) out[i] += g[i];
  return out;
}

GridFunction mul(const GridFunction& f, const GridFunction& g) {
  require_same_size(f, g);
  GridFunction out = f;
  for (int i = 0; i < g.size(); ++i) out[i] *= g[i];
  return out;
}

GridFunction scale(double factor, const GridFunction& f) {
  if (!(factor > 0.0)) {
    raise(ErrorKind::NonPositiveScale, "factor " + std::to_string(factor));
  }
  GridFunction out = f;
  for (double& v : out.values) v *= factor;
  return out;
}

double sup_norm_distance(const GridFunction& f, const GridFunction& g) {
  require_same_size(f, g);
  double worst = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::fabs(f[i] - g[i]));
  }
  return worst;
}

}  // namespace monoapprox
