#include "toda/lie.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toda {

RootElement RootElement::unit(int rank, int i) {
  RootElement e = zero(rank);
  e.m[i] = 1;
  return e;
}

int RootElement::height() const {
  int h = 0;
  for (int v : m) h += v;
  return h;
}

bool RootElement::is_zero() const {
  return std::all_of(m.begin(), m.end(), [](int v) { return v == 0; });
}

RootElement operator+(const RootElement& a, const RootElement& b) {
  RootElement r = a;
  for (std::size_t i = 0; i < r.m.size(); ++i) r.m[i] += b.m[i];
  return r;
}

RootElement operator-(const RootElement& a, const RootElement& b) {
  RootElement r = a;
  for (std::size_t i = 0; i < r.m.size(); ++i) r.m[i] -= b.m[i];
  return r;
}

bool RootElement::nonnegative() const {
  return std::all_of(m.begin(), m.end(), [](int v) { return v >= 0; });
}

bool leq(const RootElement& a, const RootElement& b) {
  for (std::size_t i = 0; i < a.m.size(); ++i)
    if (a.m[i] > b.m[i]) return false;
  return true;
}

std::string RootElement::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << ")";
  return os.str();
}

std::vector<RootElement> enumerate_Qplus(const RootElement& bound) {
  std::vector<RootElement> out;
  RootElement cur = RootElement::zero(bound.rank());
  while (true) {
    out.push_back(cur);
    int i = bound.rank() - 1;
    while (i >= 0 && cur.m[i] == bound.m[i]) {
      cur.m[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur.m[i];
  }
  return out;
}

LieKind lie_kind_from_char(char c) {
  switch (c) {
    case 'A': return LieKind::A;
    case 'B': return LieKind::B;
    case 'C': return LieKind::C;
    case 'D': return LieKind::D;
  }
  throw std::invalid_argument(std::string("unknown Lie kind ") + c);
}

char lie_kind_char(LieKind k) {
  switch (k) {
    case LieKind::A: return 'A';
    case LieKind::B: return 'B';
    case LieKind::C: return 'C';
    case LieKind::D: return 'D';
    case LieKind::Custom: return 'X';
  }
  return '?';
}

bool CartanData::is_simply_laced() const { return kind == LieKind::A || kind == LieKind::D; }

Rational CartanData::pair_root_alpha(const RootElement& beta, int i) const {
  Rational s = 0;
  for (int j = 0; j < rank; ++j) s += Rational(B[j][i]) * beta[j];
  return s;
}

Rational CartanData::pair_roots(const RootElement& beta, const RootElement& gamma) const {
  Rational s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) s += Rational(B[i][j]) * beta[i] * gamma[j];
  return s;
}

Rational CartanData::pair_root_eps(const RootElement& beta, int k) const {
  // (beta, eps_k) = sum_j m_j (alpha_j, eps_k), (alpha_j, eps_k) =
  // alpha_in_eps[j][k] * (eps_k, eps_k)
  Rational s = 0;
  for (int j = 0; j < rank; ++j) s += Rational(alpha_in_eps[j][k]) * beta[j];
  return s * eps_norm;
}

LaurentPoly CartanData::qfact_beta(const RootElement& m) const {
  LaurentPoly p = LaurentPoly::one();
  for (const auto& f : qfact_beta_factors(m)) p *= f;
  return p;
}

std::vector<LaurentPoly> CartanData::qfact_beta_factors(const RootElement& m) const {
  std::vector<LaurentPoly> fs;
  for (int i = 0; i < rank; ++i) {
    auto fi = qd_pochhammer_factors(d[i], m[i]);
    fs.insert(fs.end(), fi.begin(), fi.end());
  }
  return fs;
}

CartanData build_cartan(LieKind kind, int rank) {
  if (kind == LieKind::Custom) throw std::invalid_argument("use build_custom for custom matrices");
  int minrank = kind == LieKind::D ? 3 : (kind == LieKind::A ? 1 : 2);
  if (rank < minrank)
    throw std::invalid_argument(std::string("rank ") + std::to_string(rank) + " unsupported for " +
                                lie_kind_char(kind) + " series");
  CartanData cd;
  cd.kind = kind;
  cd.rank = rank;
  cd.d.assign(rank, 1);
  if (kind == LieKind::B)
    for (int i = 0; i < rank - 1; ++i) cd.d[i] = 2;
  if (kind == LieKind::C) cd.d[rank - 1] = 2;

  // simple roots over orthonormal eps
  int ne = kind == LieKind::A ? rank + 1 : rank;
  cd.alpha_in_eps.assign(rank, std::vector<int>(ne, 0));
  for (int i = 0; i + 1 < rank || (kind == LieKind::A && i < rank); ++i) {
    cd.alpha_in_eps[i][i] = 1;
    cd.alpha_in_eps[i][i + 1] = -1;
  }
  switch (kind) {
    case LieKind::A: cd.eps_norm = 1; break;
    case LieKind::B:
      cd.alpha_in_eps[rank - 1][rank - 1] = 1;
      cd.eps_norm = 2;
      break;
    case LieKind::C:
      cd.alpha_in_eps[rank - 1][rank - 1] = 2;
      cd.eps_norm = 1;
      break;
    case LieKind::D:
      cd.alpha_in_eps[rank - 1][rank - 2] = 1;
      cd.alpha_in_eps[rank - 1][rank - 1] = 1;
      cd.eps_norm = 1;
      break;
    default: break;
  }

  // B matrix from the eps expansion, C from B
  cd.B.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      Rational s = 0;
      for (int k = 0; k < ne; ++k)
        s += Rational(cd.alpha_in_eps[i][k]) * cd.alpha_in_eps[j][k] * cd.eps_norm;
      if (s.get_den() != 1) throw std::logic_error("non-integral root pairing");
      cd.B[i][j] = static_cast<int>(s.get_num().get_si());
    }
  cd.C.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (cd.B[i][j] % cd.d[i] != 0) throw std::logic_error("symmetrizer mismatch");
      cd.C[i][j] = cd.B[i][j] / cd.d[i];
    }

  // eps over alpha: invert alpha_in_eps; for A use eps_i - eps_{l+1}
  // (t_{l+1} = 1 convention), giving eps~_i = alpha_i + ... + alpha_l.
  cd.eps_in_alpha.assign(ne, std::vector<Rational>(rank, 0));
  if (kind == LieKind::A) {
    for (int i = 0; i < ne; ++i)
      for (int j = i; j < rank; ++j) cd.eps_in_alpha[i][j] = 1;  // row l+1 stays zero
  } else if (kind == LieKind::B) {
    // eps_i = alpha_i + ... + alpha_l
    for (int i = 0; i < ne; ++i)
      for (int j = i; j < rank; ++j) cd.eps_in_alpha[i][j] = 1;
  } else if (kind == LieKind::C) {
    // eps_i = alpha_i + ... + alpha_{l-1} + alpha_l / 2
    for (int i = 0; i < ne; ++i) {
      for (int j = i; j < rank - 1; ++j) cd.eps_in_alpha[i][j] = 1;
      cd.eps_in_alpha[i][rank - 1] = make_rational(1, 2);
    }
  } else if (kind == LieKind::D) {
    // eps_i = alpha_i + ... + alpha_{l-2} + (alpha_{l-1} + alpha_l)/2 for i <= l-1,
    // eps_l = (alpha_l - alpha_{l-1})/2
    for (int i = 0; i < ne - 1; ++i) {
      for (int j = i; j < rank - 2; ++j) cd.eps_in_alpha[i][j] = 1;
      cd.eps_in_alpha[i][rank - 2] = make_rational(1, 2);
      cd.eps_in_alpha[i][rank - 1] = make_rational(1, 2);
    }
    cd.eps_in_alpha[ne - 1][rank - 2] = make_rational(-1, 2);
    cd.eps_in_alpha[ne - 1][rank - 1] = make_rational(1, 2);
  }
  return cd;
}

CartanData build_custom(std::vector<std::vector<int>> symmetric_matrix) {
  int rank = static_cast<int>(symmetric_matrix.size());
  if (rank == 0) throw std::invalid_argument("empty matrix");
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(symmetric_matrix[i].size()) != rank)
      throw std::invalid_argument("matrix is not square");
    for (int j = 0; j < rank; ++j)
      if (symmetric_matrix[i][j] != symmetric_matrix[j][i])
        throw std::invalid_argument("custom matrix must be symmetric");
  }
  CartanData cd;
  cd.kind = LieKind::Custom;
  cd.rank = rank;
  cd.C = symmetric_matrix;
  cd.B = std::move(symmetric_matrix);
  cd.d.assign(rank, 1);
  return cd;
}

WeightExpr WeightExpr::fundamental(int rank, int i, const Rational& c) {
  WeightExpr w = zero(rank);
  w.integral_part[i] = c;
  return w;
}

WeightExpr WeightExpr::rho(int rank) {
  WeightExpr w = zero(rank);
  for (auto& c : w.integral_part) c = 1;
  return w;
}

WeightExpr WeightExpr::symbolic(int rank, const std::string& name) {
  WeightExpr w = zero(rank);
  w.base_symbols.emplace_back(name, 1);
  return w;
}

WeightExpr WeightExpr::integral(std::vector<Rational> omega_coords) {
  WeightExpr w;
  w.integral_part = std::move(omega_coords);
  return w;
}

WeightExpr& WeightExpr::operator+=(const WeightExpr& o) {
  for (const auto& [name, c] : o.base_symbols) {
    auto it = std::find_if(base_symbols.begin(), base_symbols.end(),
                           [&](const auto& p) { return p.first == name; });
    if (it == base_symbols.end()) {
      base_symbols.emplace_back(name, c);
    } else {
      it->second += c;
      if (it->second == 0) base_symbols.erase(it);
    }
  }
  std::sort(base_symbols.begin(), base_symbols.end());
  if (integral_part.size() < o.integral_part.size()) integral_part.resize(o.integral_part.size(), Rational(0));
  for (std::size_t i = 0; i < o.integral_part.size(); ++i) integral_part[i] += o.integral_part[i];
  return *this;
}

WeightExpr& WeightExpr::operator-=(const WeightExpr& o) { return *this += o.scaled(-1); }

WeightExpr WeightExpr::scaled(const Rational& c) const {
  WeightExpr w = *this;
  if (c == 0) return zero(static_cast<int>(integral_part.size()));
  for (auto& [n, v] : w.base_symbols) v *= c;
  for (auto& v : w.integral_part) v *= c;
  return w;
}

WeightExpr WeightExpr::from_root(const CartanData& cd, const RootElement& beta) {
  // alpha_j = sum_k (alpha_j, alpha_k^vee) omega_k = sum_k C_{kj} omega_k
  WeightExpr w = zero(cd.rank);
  for (int k = 0; k < cd.rank; ++k) {
    Rational s = 0;
    for (int j = 0; j < cd.rank; ++j) s += Rational(cd.C[k][j]) * beta[j];
    w.integral_part[k] = s;
  }
  return w;
}

bool WeightExpr::dominant() const {
  if (!is_integral()) throw std::invalid_argument("dominance test needs an integral weight");
  return std::all_of(integral_part.begin(), integral_part.end(), [](const Rational& c) { return c >= 0; });
}

std::string WeightExpr::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : base_symbols) {
    if (!first) os << " + ";
    if (c != 1) os << c.get_str() << "*";
    os << n;
    first = false;
  }
  for (std::size_t i = 0; i < integral_part.size(); ++i) {
    if (integral_part[i] == 0) continue;
    if (!first) os << " + ";
    os << integral_part[i].get_str() << "*w" << (i + 1);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

PairingExpr& PairingExpr::operator+=(const PairingExpr& o) {
  constant += o.constant;
  for (const auto& [key, c] : o.atoms) {
    auto it = std::find_if(atoms.begin(), atoms.end(), [&](const auto& p) { return p.first == key; });
    if (it == atoms.end()) {
      atoms.emplace_back(key, c);
    } else {
      it->second += c;
      if (it->second == 0) atoms.erase(it);
    }
  }
  std::sort(atoms.begin(), atoms.end());
  return *this;
}

PairingExpr& PairingExpr::operator-=(const PairingExpr& o) { return *this += o.scaled(-1); }

PairingExpr PairingExpr::scaled(const Rational& c) const {
  PairingExpr e = *this;
  if (c == 0) return PairingExpr{};
  e.constant *= c;
  for (auto& [k, v] : e.atoms) v *= c;
  return e;
}

std::string PairingExpr::str() const {
  std::ostringstream os;
  os << constant.get_str();
  for (const auto& [k, c] : atoms)
    os << " + " << c.get_str() << "*(" << k.first << ",a" << (k.second + 1) << ")";
  return os.str();
}

PairingExpr pair(const WeightExpr& x, const RootElement& y, const CartanData& cd) {
  PairingExpr e;
  for (int i = 0; i < cd.rank; ++i) {
    if (y[i] == 0) continue;
    for (const auto& [name, c] : x.base_symbols) {
      PairingExpr atom;
      atom.atoms.emplace_back(std::make_pair(name, i), c * y[i]);
      e += atom;
    }
  }
  // integral part: (omega_k, alpha_i) = d_i delta_{ki}
  for (int i = 0; i < cd.rank; ++i) {
    if (i < static_cast<int>(x.integral_part.size()))
      e.constant += x.integral_part[i] * cd.d[i] * y[i];
  }
  return e;
}

PairingExpr pair(const WeightExpr& x, const WeightExpr& y, const CartanData& cd) {
  if (!y.is_integral() || !x.is_integral())
    throw std::invalid_argument("weight-weight pairing requires integral weights");
  // express y over alpha via omega-coordinates and C^T
  // (omega_k, omega_j) is not needed: y = sum c_j alpha_j with C^T c = y
  // Solve C^T c = y over rationals.
  int l = cd.rank;
  std::vector<std::vector<Rational>> mat(l, std::vector<Rational>(l + 1, 0));
  for (int r = 0; r < l; ++r) {
    for (int j = 0; j < l; ++j) mat[r][j] = Rational(cd.C[r][j]);  // omega-coords of alpha_j
    mat[r][l] = r < static_cast<int>(y.integral_part.size()) ? y.integral_part[r] : Rational(0);
  }
  // Gaussian elimination
  for (int col = 0, row = 0; col < l && row < l; ++col) {
    int piv = -1;
    for (int r = row; r < l; ++r)
      if (mat[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("singular Cartan matrix");
    std::swap(mat[piv], mat[row]);
    Rational inv = 1 / mat[row][col];
    for (int cc = col; cc <= l; ++cc) mat[row][cc] *= inv;
    for (int r = 0; r < l; ++r) {
      if (r == row || mat[r][col] == 0) continue;
      Rational f = mat[r][col];
      for (int cc = col; cc <= l; ++cc) mat[r][cc] -= f * mat[row][cc];
    }
    ++row;
  }
  PairingExpr e;
  for (int j = 0; j < l; ++j) {
    Rational cj = mat[j][l];
    if (cj == 0) continue;
    PairingExpr term = pair(x, RootElement::unit(l, j), cd).scaled(cj);
    e += term;
  }
  return e;
}

Rational pair(const RootElement& x, const RootElement& y, const CartanData& cd) {
  return cd.pair_roots(x, y);
}

namespace {

const char* var_letter_for(const std::string& weight_symbol) {
  if (weight_symbol == "lambda") return "z";
  if (weight_symbol == "mu") return "u";
  if (weight_symbol == "theta") return "w";
  return nullptr;
}

}  // namespace

Monomial render_q_power(const PairingExpr& expr, int sign) {
  Monomial m = Monomial::q_pow(expr.constant * sign);
  for (const auto& [key, c] : expr.atoms) {
    Rational coeff = c * sign;
    if (coeff.get_den() != 1 || !coeff.get_num().fits_sint_p())
      throw std::domain_error("non-integral symbolic pairing coefficient");
    const char* letter = var_letter_for(key.first);
    if (!letter) throw std::invalid_argument("no variable convention for weight symbol " + key.first);
    // q^{-(s, alpha_i)} = <letter>_{i+1}, so q^{c (s, alpha_i)} = var^{-c}
    m *= Monomial::sym(letter + std::to_string(key.second + 1),
                       static_cast<std::int32_t>(-coeff.get_num().get_si()));
  }
  return m;
}

WeightExpr dominant_rep(const WeightExpr& nu, const CartanData& cd) {
  if (!nu.is_integral()) throw std::invalid_argument("dominant_rep needs an integral weight");
  std::vector<Rational> n = nu.integral_part;
  n.resize(cd.rank, Rational(0));
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < cd.rank; ++i) {
      if (n[i] >= 0) continue;
      // s_i: n_k -> n_k - n_i C_{ki} (the omega-coordinates of alpha_i)
      Rational ni = n[i];
      for (int k = 0; k < cd.rank; ++k) n[k] -= ni * cd.C[k][i];
      moved = true;
    }
  }
  return WeightExpr::integral(std::move(n));
}

bool is_weight_of_irrep(const WeightExpr& mu, const WeightExpr& nu, const CartanData& cd) {
  if (!cd.is_classical()) throw std::invalid_argument("weight membership needs a classical kind");
  if (!mu.dominant()) throw std::invalid_argument("mu must be dominant");
  WeightExpr nup = dominant_rep(nu, cd);
  WeightExpr diff = mu - nup;
  // mu - nu+ must be a nonnegative integral combination of simple roots:
  // solve C^T c = diff over Q and demand c in Z_{>=0}^l.
  int l = cd.rank;
  std::vector<std::vector<Rational>> mat(l, std::vector<Rational>(l + 1, 0));
  for (int r = 0; r < l; ++r) {
    for (int j = 0; j < l; ++j) mat[r][j] = Rational(cd.C[r][j]);  // omega-coords of alpha_j
    mat[r][l] = r < static_cast<int>(diff.integral_part.size()) ? diff.integral_part[r] : Rational(0);
  }
  for (int col = 0, row = 0; col < l && row < l; ++col) {
    int piv = -1;
    for (int r = row; r < l; ++r)
      if (mat[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("singular Cartan matrix");
    std::swap(mat[piv], mat[row]);
    Rational inv = 1 / mat[row][col];
    for (int cc = col; cc <= l; ++cc) mat[row][cc] *= inv;
    for (int r = 0; r < l; ++r) {
      if (r == row || mat[r][col] == 0) continue;
      Rational f = mat[r][col];
      for (int cc = col; cc <= l; ++cc) mat[r][cc] -= f * mat[row][cc];
    }
    ++row;
  }
  for (int j = 0; j < l; ++j) {
    const Rational& cj = mat[j][l];
    if (cj < 0 || cj.get_den() != 1) return false;
  }
  return true;
}

}  // namespace toda
