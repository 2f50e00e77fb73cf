#include "projave/convex/builders.hpp"

#include <cmath>
#include <array>
#include <fstream>
#include <map>
#include <numbers>

#include "projave/errors.hpp"
#include "projave/geometry/constants.hpp"

namespace projave::convex {

namespace {

void require_dim(int n) {
  if (n < 2) {
    throw DomainError("polytope builders need n >= 2");
  }
}

double factorial(int k) { return std::tgamma(k + 1.0); }

// Generalised cross product of the n-1 columns of m: the vector of signed
// cofactors, orthogonal to every column, with norm equal to the
// (n-1)-volume of the parallelotope they span.
Vector cofactor_normal(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Vector c(n);
  Matrix minor(n - 1, n - 1);
  for (int k = 0; k < n; ++k) {
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == k) {
        continue;
      }
      minor.row(rr++) = m.row(r);
    }
    c[k] = ((k % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  return c;
}

// Calls fn(indices) for every k-subset of {0, ..., m-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int m, int k, Fn&& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) {
    idx[i] = i;
  }
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++idx[i];
    for (int j = i + 1; j < k; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }
}

Vector to_vector(const nlohmann::json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ConfigError(std::string("polytope fixture: ") + what + " must be an array of length " +
                      std::to_string(n));
  }
  Vector v(n);
  for (int k = 0; k < n; ++k) {
    v[k] = j[k].get<double>();
  }
  return v;
}

}  // namespace

Polytope cube(int n, double half_width) {
  require_dim(n);
  if (!(half_width > 0.0)) {
    throw DomainError("cube: half width must be positive");
  }
  std::vector<Vector> vertices;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector v(n);
    for (int k = 0; k < n; ++k) {
      v[k] = ((mask >> k) & 1) ? half_width : -half_width;
    }
    vertices.push_back(v);
  }
  const double area = std::pow(2.0 * half_width, n - 1);
  std::vector<Polytope::Facet> facets;
  for (int k = 0; k < n; ++k) {
    for (int s : {1, -1}) {
      Vector normal = Vector::Zero(n);
      normal[k] = s;
      // The all-ones / all-zeros masks touch every positive / negative facet.
      const int vertex = s > 0 ? (1 << n) - 1 : 0;
      facets.push_back({normal, area, vertex});
    }
  }
  return Polytope(std::move(vertices), std::move(facets));
}

Polytope regular_simplex(int n) {
  require_dim(n);
  // Gram matrix of n+1 unit vectors with pairwise products -1/n has rank n.
  const int m = n + 1;
  Matrix gram = Matrix::Constant(m, m, -1.0 / n);
  gram.diagonal().setOnes();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  // Eigenvalues ascend; the first is 0.
  const Matrix coords =
      eig.eigenvectors().rightCols(n) * eig.eigenvalues().tail(n).cwiseSqrt().asDiagonal();
  std::vector<Vector> vertices;
  for (int k = 0; k < m; ++k) {
    vertices.push_back(coords.row(k).transpose());
  }
  std::vector<Polytope::Facet> facets;
  for (int k = 0; k < m; ++k) {
    std::vector<int> others;
    for (int l = 0; l < m; ++l) {
      if (l != k) {
        others.push_back(l);
      }
    }
    Matrix edges(n, n - 1);
    for (int e = 1; e < n; ++e) {
      edges.col(e - 1) = vertices[others[e]] - vertices[others[0]];
    }
    const double area = std::sqrt((edges.transpose() * edges).determinant()) / factorial(n - 1);
    facets.push_back({-vertices[k].normalized(), area, others[0]});
  }
  return Polytope(std::move(vertices), std::move(facets));
}

Polytope cross_polytope(int n) {
  require_dim(n);
  std::vector<Vector> vertices;
  for (int k = 0; k < n; ++k) {
    Vector v = Vector::Zero(n);
    v[k] = 1.0;
    vertices.push_back(v);
    vertices.push_back(-v);
  }
  const double area = std::sqrt(static_cast<double>(n)) / factorial(n - 1);
  std::vector<Polytope::Facet> facets;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector normal(n);
    for (int k = 0; k < n; ++k) {
      normal[k] = ((mask >> k) & 1) ? -1.0 : 1.0;
    }
    normal /= std::sqrt(static_cast<double>(n));
    const int vertex = (mask & 1) ? 1 : 0;  // the vertex s_1 e_1
    facets.push_back({normal, area, vertex});
  }
  return Polytope(std::move(vertices), std::move(facets));
}

Polytope zonotope(const std::vector<Vector>& generators) {
  if (generators.empty()) {
    throw DomainError("zonotope: needs generators");
  }
  const int n = static_cast<int>(generators.front().size());
  require_dim(n);
  const int m = static_cast<int>(generators.size());
  if (m < n) {
    throw DomainError("zonotope: fewer generators than dimensions gives no interior");
  }
  double scale = 0.0;
  for (const auto& g : generators) {
    scale = std::max(scale, g.norm());
  }

  std::map<std::vector<signed char>, int> vertex_index;
  std::vector<Vector> vertices;
  std::vector<Polytope::Facet> facets;

  auto vertex_of = [&](const std::vector<signed char>& signs) {
    auto [it, inserted] = vertex_index.try_emplace(signs, static_cast<int>(vertices.size()));
    if (inserted) {
      Vector v = Vector::Zero(n);
      for (int k = 0; k < m; ++k) {
        v += signs[k] * generators[k];
      }
      vertices.push_back(v);
    }
    return it->second;
  };

  Matrix sub(n, n - 1);
  for_each_subset(m, n - 1, [&](const std::vector<int>& subset) {
    for (int c = 0; c < n - 1; ++c) {
      sub.col(c) = generators[subset[c]];
    }
    const Vector raw = cofactor_normal(sub);
    const double len = raw.norm();
    if (len <= 1e-12 * std::pow(scale, n - 1)) {
      return;  // dependent subset, no facet
    }
    const double area = std::pow(2.0, n - 1) * len;
    for (int s : {1, -1}) {
      const Vector normal = s * raw / len;
      std::vector<signed char> signs(m);
      for (int k = 0; k < m; ++k) {
        const double d = normal.dot(generators[k]);
        signs[k] = d >= 0.0 ? 1 : -1;
      }
      // Corners of the facet parallelotope.
      int incident = -1;
      for (int corner = 0; corner < (1 << (n - 1)); ++corner) {
        for (int c = 0; c < n - 1; ++c) {
          signs[subset[c]] = ((corner >> c) & 1) ? -1 : 1;
        }
        const int idx = vertex_of(signs);
        if (incident < 0) {
          incident = idx;
        }
      }
      facets.push_back({normal, area, incident});
    }
  });
  return Polytope(std::move(vertices), std::move(facets));
}

Polytope ball_zonotope(int n, int generators) {
  require_dim(n);
  if (generators < n) {
    throw DomainError("ball_zonotope: need at least n generators");
  }
  std::vector<Vector> dirs;
  if (n == 3) {
    // Fibonacci lattice on the upper hemisphere (uniform in height).
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < generators; ++k) {
      const double z = (k + 0.5) / generators;
      const double rho = std::sqrt(1.0 - z * z);
      const double phi = golden * k;
      Vector v(3);
      v << rho * std::cos(phi), rho * std::sin(phi), z;
      dirs.push_back(v);
    }
  } else {
    geometry::Rng rng(0x5eed0ba11ULL + static_cast<unsigned>(n));
    for (int k = 0; k < generators; ++k) {
      Vector v = geometry::sample_unit_vector(rng, n);
      if (v[n - 1] < 0.0) {
        v = -v;
      }
      dirs.push_back(v);
    }
  }
  // h(Z, u) = L sum_k |u . g_k| averages L m q_{n,1} over the sphere.
  const double length = 1.0 / (generators * geometry::q_coefficient(n, 1.0));
  for (auto& d : dirs) {
    d *= length;
  }
  return zonotope(dirs);
}

Polytope geodesic_sphere(int frequency) {
  if (frequency < 1) {
    throw DomainError("geodesic_sphere: frequency must be >= 1");
  }
  const double phi = std::numbers::phi;
  std::vector<Vector> ico;
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      Vector a(3), b(3), c(3);
      a << 0.0, s1, s2 * phi;
      b << s1, s2 * phi, 0.0;
      c << s2 * phi, 0.0, s1;
      ico.push_back(a.normalized());
      ico.push_back(b.normalized());
      ico.push_back(c.normalized());
    }
  }
  // Faces are the triples of mutually adjacent vertices.
  double edge = 1e300;
  for (int u = 0; u < 12; ++u) {
    for (int v = u + 1; v < 12; ++v) {
      edge = std::min(edge, (ico[u] - ico[v]).norm());
    }
  }
  std::vector<std::array<int, 3>> faces;
  auto adjacent = [&](int u, int v) { return (ico[u] - ico[v]).norm() < 1.01 * edge; };
  for (int u = 0; u < 12; ++u) {
    for (int v = u + 1; v < 12; ++v) {
      for (int w = v + 1; w < 12; ++w) {
        if (adjacent(u, v) && adjacent(v, w) && adjacent(u, w)) {
          faces.push_back({u, v, w});
        }
      }
    }
  }

  std::map<std::array<long long, 3>, int> index;
  std::vector<Vector> vertices;
  auto vertex_of = [&](const Vector& x) {
    const Vector u = x.normalized();
    const std::array<long long, 3> key{std::llround(u[0] * 1e9), std::llround(u[1] * 1e9),
                                       std::llround(u[2] * 1e9)};
    auto [it, inserted] = index.try_emplace(key, static_cast<int>(vertices.size()));
    if (inserted) {
      vertices.push_back(u);
    }
    return it->second;
  };
  std::vector<std::array<int, 3>> triangles;
  const int k = frequency;
  for (const auto& f : faces) {
    const Vector &a = ico[f[0]], &b = ico[f[1]], &c = ico[f[2]];
    auto grid = [&](int r, int s) {
      return vertex_of((static_cast<double>(k - r - s) * a + r * b + s * c) / k);
    };
    for (int r = 0; r < k; ++r) {
      for (int s = 0; s < k - r; ++s) {
        triangles.push_back({grid(r, s), grid(r + 1, s), grid(r, s + 1)});
        if (r + s + 2 <= k) {
          triangles.push_back({grid(r + 1, s), grid(r + 1, s + 1), grid(r, s + 1)});
        }
      }
    }
  }
  std::vector<Polytope::Facet> facets;
  facets.reserve(triangles.size());
  for (const auto& t : triangles) {
    const Eigen::Vector3d p0 = vertices[t[0]], p1 = vertices[t[1]], p2 = vertices[t[2]];
    Eigen::Vector3d cross = (p1 - p0).cross(p2 - p0);
    if (cross.dot(p0 + p1 + p2) < 0.0) {
      cross = -cross;
    }
    const double len = cross.norm();
    facets.push_back({Vector(cross / len), 0.5 * len, t[0]});
  }
  return Polytope(std::move(vertices), std::move(facets));
}

Polytope random_symmetric_polytope(geometry::Rng& rng, int n) {
  require_dim(n);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  auto random_map = [&] {
    Matrix a = Matrix::Identity(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        a(r, c) += 0.6 * normal(rng);
      }
    }
    // Keep the map comfortably invertible.
    Eigen::JacobiSVD<Matrix> svd(a);
    if (svd.singularValues()[n - 1] < 0.1) {
      a += 0.5 * Matrix::Identity(n, n);
    }
    return a;
  };
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> count(n, 8);
      const int m = count(rng);
      std::vector<Vector> gens;
      for (int k = 0; k < m; ++k) {
        gens.push_back((0.5 + unit(rng)) * geometry::sample_unit_vector(rng, n));
      }
      return zonotope(gens);
    }
    case 1:
      return cube(n).linear_image(random_map());
    default:
      return cross_polytope(n).linear_image(random_map());
  }
}

DiscreteSphereMeasure random_even_measure(geometry::Rng& rng, int dim, int pairs, double mass) {
  if (dim < 1 || pairs < 1 || !(mass > 0.0)) {
    throw DomainError("random_even_measure: need dim >= 1, pairs >= 1, mass > 0");
  }
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  std::vector<DiscreteSphereMeasure::Atom> half;
  double total = 0.0;
  for (int k = 0; k < pairs; ++k) {
    half.push_back({geometry::sample_unit_vector(rng, dim), unit(rng)});
    total += 2.0 * half.back().weight;
  }
  for (auto& a : half) {
    a.weight *= mass / total;
  }
  return DiscreteSphereMeasure::antithetic(dim, half);
}

nlohmann::json polytope_to_json(const Polytope& p) {
  nlohmann::json j;
  j["dimension"] = p.dim();
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices()) {
    verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  auto& facets = j["facets"] = nlohmann::json::array();
  for (const auto& f : p.facets()) {
    facets.push_back({{"normal", std::vector<double>(f.normal.data(), f.normal.data() + f.normal.size())},
                      {"area", f.area},
                      {"vertex", f.vertex}});
  }
  return j;
}

Polytope polytope_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("dimension").get<int>();
    if (n < 2) {
      throw ConfigError("polytope fixture: dimension must be >= 2");
    }
    std::vector<Vector> vertices;
    for (const auto& v : j.at("vertices")) {
      vertices.push_back(to_vector(v, n, "vertex"));
    }
    std::vector<Polytope::Facet> facets;
    for (const auto& f : j.at("facets")) {
      facets.push_back({to_vector(f.at("normal"), n, "normal"), f.at("area").get<double>(),
                        f.at("vertex").get<int>()});
    }
    return Polytope(std::move(vertices), std::move(facets));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("polytope fixture: ") + e.what());
  }
}

Polytope read_polytope(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open polytope fixture " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("polytope fixture " + path.string() + ": " + e.what());
  }
  return polytope_from_json(j);
}

void write_polytope(const Polytope& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write polytope fixture " + path.string());
  }
  out << polytope_to_json(p).dump(2) << '\n';
}

}  // namespace projave::convex
