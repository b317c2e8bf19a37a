#include "k3fm/lattice.hpp"

#include <cctype>
#include <fstream>

#include "json.hpp"

namespace k3fm {

namespace {

std::shared_ptr<const LatticeExpr> atom_expr(LatticeExpr::Kind kind, long param = 0) {
  auto e = std::make_shared<LatticeExpr>();
  e->kind = kind;
  e->param = param;
  return e;
}

}  // namespace

EvenLattice make_lattice(const IntMatrix& gram, std::shared_ptr<const LatticeExpr> expr) {
  if (gram.rows() != gram.cols()) throw NotSymmetric("Gram matrix is not square");
  if (!gram.is_symmetric()) throw NotSymmetric();
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (gram(i, i) % 2 != 0) throw OddDiagonal();
  if (determinant(gram) == 0) throw Degenerate();
  EvenLattice L;
  L.gram_ = gram;
  L.sig_ = signature(gram);
  L.expr_ = std::move(expr);
  if (!L.expr_) {
    auto e = std::make_shared<LatticeExpr>();
    e->kind = LatticeExpr::Kind::Gram;
    L.expr_ = e;
  }
  return L;
}

EvenLattice named(const std::string& name) {
  if (name == "U") {
    return make_lattice(IntMatrix{{0, 1}, {1, 0}}, atom_expr(LatticeExpr::Kind::U));
  }
  if (name == "E8") {
    // Negated E8 Cartan matrix (Bourbaki numbering; edges 1-3, 3-4, 4-5,
    // 5-6, 6-7, 7-8, 2-4), so det = 1 and signature (0, 8).
    IntMatrix c{{2, 0, -1, 0, 0, 0, 0, 0},  //
                {0, 2, 0, -1, 0, 0, 0, 0},  //
                {-1, 0, 2, -1, 0, 0, 0, 0},  //
                {0, -1, -1, 2, -1, 0, 0, 0},  //
                {0, 0, 0, -1, 2, -1, 0, 0},  //
                {0, 0, 0, 0, -1, 2, -1, 0},  //
                {0, 0, 0, 0, 0, -1, 2, -1},  //
                {0, 0, 0, 0, 0, 0, -1, 2}};
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) c(i, j) = -c(i, j);
    return make_lattice(c, atom_expr(LatticeExpr::Kind::E8));
  }
  if (name == "Lambda_K3" || name == "LK3") {
    EvenLattice u = named("U");
    EvenLattice e8 = named("E8");
    return direct_sum(direct_sum(direct_sum(u, u), u), direct_sum(e8, e8));
  }
  if (name == "Lambda_K3_tilde" || name == "LK3_tilde") {
    return direct_sum(named("U"), named("Lambda_K3"));
  }
  throw UnknownName(name);
}

EvenLattice rank_one(long square) {
  if (square == 0) throw Degenerate();
  IntMatrix g(1, 1);
  g(0, 0) = square;
  return make_lattice(g, atom_expr(LatticeExpr::Kind::RankOne, square));
}

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);

  auto e = std::make_shared<LatticeExpr>();
  e->kind = LatticeExpr::Kind::DirectSum;
  for (const auto& part : {a.expr(), b.expr()}) {
    if (part && part->kind == LatticeExpr::Kind::DirectSum)
      e->children.insert(e->children.end(), part->children.begin(), part->children.end());
    else if (part)
      e->children.push_back(part);
  }
  return make_lattice(g, e);
}

EvenLattice rescale(const EvenLattice& L, long t) {
  if (t == 0) throw Degenerate();
  IntMatrix g = L.gram();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= t;
  auto e = std::make_shared<LatticeExpr>();
  e->kind = LatticeExpr::Kind::Rescale;
  e->param = t;
  e->children.push_back(L.expr());
  return make_lattice(g, e);
}

DiscFormData discriminant_form(const EvenLattice& L) {
  const std::size_t n = L.rank();
  // D_L = Z^n / G Z^n in dual-basis coordinates; the dual basis pairs by
  // G^{-1}, so q and b on the presentation generators read off G^{-1}.
  RatMatrix ginv = rational_inverse(RatMatrix(L.gram()));
  std::vector<Rat> q_old(n);
  std::vector<std::vector<Rat>> b_old(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    q_old[i] = mod2(ginv(i, i));
    for (std::size_t j = 0; j < n; ++j) b_old[i][j] = mod1(ginv(i, j));
  }
  ReducedPresentation red = reduce_presentation(L.gram(), q_old, b_old);
  const std::size_t k = red.form.num_generators();
  RatMatrix gens(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Rat acc(0);
      for (std::size_t a = 0; a < n; ++a) acc += ginv(i, a) * Rat(red.expr(a, j));
      acc.canonicalize();
      gens(i, j) = acc;
    }
  return {red.form, gens};
}

bool is_two_elementary(const EvenLattice& L) {
  DiscFormData data = discriminant_form(L);
  for (auto d : data.form.factors())
    if (d != 2) return false;
  return true;
}

std::size_t min_generators(const DiscriminantForm& D) { return D.num_generators(); }

bool nikulin_singleton(const EvenLattice& L) {
  auto [p, n] = L.signature();
  if (p == 0 || n == 0) return false;
  return L.rank() >= min_generators(discriminant_form(L).form) + 2;
}

bool contains_u_summand(const EvenLattice& L) {
  const auto& e = L.expr();
  if (!e) return false;
  if (e->kind == LatticeExpr::Kind::U) return true;
  if (e->kind != LatticeExpr::Kind::DirectSum) return false;
  for (const auto& c : e->children)
    if (c->kind == LatticeExpr::Kind::U) return true;
  return false;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  EvenLattice parse() {
    EvenLattice L = term();
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == '+') {
      ++pos_;
      L = direct_sum(L, term());
      skip_ws();
    }
    if (pos_ != s_.size())
      throw ParseError("unexpected character at position " + std::to_string(pos_));
    return L;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      throw ParseError("expected integer at position " + std::to_string(start));
    return std::stol(s_.substr(start, pos_ - start));
  }

  EvenLattice atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression");
    if (s_.compare(pos_, 5, "gram:") == 0) {
      pos_ += 5;
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != '+' && s_[pos_] != '(' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      return load_gram_file(s_.substr(start, pos_ - start));
    }
    if (s_[pos_] == '<') {
      ++pos_;
      long v = integer();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != '>')
        throw ParseError("expected '>' at position " + std::to_string(pos_));
      ++pos_;
      return rank_one(v);
    }
    if (s_.compare(pos_, 3, "LK3") == 0) {
      pos_ += 3;
      return named("LK3");
    }
    if (s_.compare(pos_, 2, "E8") == 0) {
      pos_ += 2;
      return named("E8");
    }
    if (s_[pos_] == 'U') {
      ++pos_;
      return named("U");
    }
    throw ParseError("unknown atom at position " + std::to_string(pos_));
  }

  EvenLattice term() {
    EvenLattice L = atom();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      long t = integer();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')')
        throw ParseError("expected ')' at position " + std::to_string(pos_));
      ++pos_;
      L = rescale(L, t);
    }
    return L;
  }

  static EvenLattice load_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open Gram file: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("bad Gram file " + path + ": " + e.what());
    }
    if (!j.contains("gram") || !j["gram"].is_array())
      throw ParseError("Gram file " + path + " lacks a \"gram\" array");
    const auto& rows = j["gram"];
    IntMatrix g(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != g.cols())
        throw ParseError("Gram file " + path + " has ragged rows");
      for (std::size_t k = 0; k < g.cols(); ++k) g(i, k) = rows[i][k].get<long>();
    }
    return make_lattice(g);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

EvenLattice parse_lattice_expr(const std::string& text) { return ExprParser(text).parse(); }

}  // namespace k3fm
