#include "qfree/builders.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace qfree {

namespace {

// Fill the K2 half from the K1 half: V e_i* = (V e_i)*.
BlockOperator complete_real(const SelfDualSpace& dom, const SelfDualSpace& cod,
                            const Matrix& v11, const Matrix& v21) {
  return BlockOperator::from_blocks(dom, cod, v11, v21.conjugate(), v21, v11.conjugate());
}

Index as_count(double x, const std::string& what) {
  require(x >= 0 && x == std::floor(x) && x < 1e6, ErrorKind::MalformedInput,
          what + " must be a non-negative integer");
  return static_cast<Index>(x);
}

std::string format_args(const std::vector<double>& args) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < args.size(); ++i) os << (i ? "," : "") << args[i];
  return os.str();
}

}  // namespace

BlockOperator identity_isometry(Index modes) {
  return BlockOperator::identity(SelfDualSpace(modes));
}

BlockOperator shift_isometry(Index modes, Index species) {
  require(modes >= 0 && species >= 1, ErrorKind::MalformedInput, "shift: bad sizes");
  const SelfDualSpace dom(modes * species), cod((modes + 1) * species);
  Matrix v11 = Matrix::Zero(cod.modes(), dom.modes());
  for (Index s = 0; s < species; ++s)
    for (Index i = 0; i < modes; ++i) v11(s * (modes + 1) + i + 1, s * modes + i) = 1.0;
  return complete_real(dom, cod, v11, Matrix::Zero(cod.modes(), dom.modes()));
}

BlockOperator flip_isometry(Index modes, const std::vector<Index>& flipped) {
  const SelfDualSpace space(modes);
  Matrix v11 = Matrix::Identity(modes, modes);
  Matrix v21 = Matrix::Zero(modes, modes);
  for (Index i : flipped) {
    require(i >= 0 && i < modes, ErrorKind::MalformedInput, "flip: mode out of range");
    v11(i, i) = 0.0;
    v21(i, i) = 1.0;
  }
  return complete_real(space, space, v11, v21);
}

BlockOperator pair_flip_isometry() {
  const SelfDualSpace space(2);
  Matrix v21 = Matrix::Zero(2, 2);
  v21(1, 0) = 1.0;  // e_0 -> e_1*
  v21(0, 1) = 1.0;  // e_1 -> e_0*
  return complete_real(space, space, Matrix::Zero(2, 2), v21);
}

BlockOperator bogoliubov_isometry(double theta) {
  const SelfDualSpace space(2);
  const double c = std::cos(theta), s = std::sin(theta);
  Matrix v11 = Matrix::Identity(2, 2) * c;
  Matrix v21 = Matrix::Zero(2, 2);
  v21(1, 0) = s;
  v21(0, 1) = -s;
  return complete_real(space, space, v11, v21);
}

BlockOperator squeeze_isometry(double r) {
  const SelfDualSpace space(1);
  Matrix v11(1, 1), v21(1, 1);
  v11(0, 0) = std::cosh(r);
  v21(0, 0) = std::sinh(r);
  return complete_real(space, space, v11, v21);
}

BlockOperator squeezed_shift_isometry(double r) {
  const BlockOperator shift = shift_isometry(1, 1);
  const SelfDualSpace cod(2);
  Matrix s11 = Matrix::Identity(2, 2), s21 = Matrix::Zero(2, 2);
  s11(1, 1) = std::cosh(r);
  s21(1, 1) = std::sinh(r);
  return complete_real(cod, cod, s11, s21) * shift;
}

std::vector<int> charged_shift_charges(Index w, bool codomain) {
  std::vector<int> q;
  const Index plus = codomain ? w + 1 : w;
  const Index minus = codomain ? w - 1 : w;
  q.insert(q.end(), static_cast<std::size_t>(plus), 1);
  q.insert(q.end(), static_cast<std::size_t>(minus), -1);
  return q;
}

BlockOperator charged_shift_isometry(Index w) {
  require(w >= 1, ErrorKind::MalformedInput, "charged-shift needs w >= 1");
  const SelfDualSpace space(2 * w);
  // Domain K1: [+0..+w-1, -0..-w-1]; codomain K1: [+0..+w, -0..-(w-2)].
  Matrix v11 = Matrix::Zero(2 * w, 2 * w), v21 = Matrix::Zero(2 * w, 2 * w);
  for (Index n = 0; n < w; ++n) v11(n + 1, n) = 1.0;            // e_n^+ -> e_{n+1}^+
  for (Index k = 1; k < w; ++k) v11(w + 1 + k - 1, w + k) = 1.0;  // e_k^- -> e_{k-1}^-
  // e_0^- -> (e_0^+)*, hence (e_0^-)* -> e_0^+.
  v21(0, w) = 1.0;
  return complete_real(space, space, v11, v21);
}

BlockOperator mode_permutation(const std::vector<Index>& perm) {
  const auto n = static_cast<Index>(perm.size());
  const SelfDualSpace space(n);
  Matrix v11 = Matrix::Zero(n, n);
  std::vector<char> seen(perm.size(), 0);
  for (Index i = 0; i < n; ++i) {
    const Index j = perm[static_cast<std::size_t>(i)];
    require(j >= 0 && j < n && !seen[static_cast<std::size_t>(j)], ErrorKind::MalformedInput,
            "not a permutation");
    seen[static_cast<std::size_t>(j)] = 1;
    v11(j, i) = 1.0;
  }
  return complete_real(space, space, v11, Matrix::Zero(n, n));
}

NamedModel build_named(const std::string& name, const std::vector<double>& args) {
  std::vector<double> used;  // explicit and default arguments, for the canonical name
  auto arg = [&](std::size_t i, double fallback) {
    const double x = i < args.size() ? args[i] : fallback;
    if (used.size() <= i) used.resize(i + 1);
    used[i] = x;
    return x;
  };
  auto max_args = [&](std::size_t n) {
    require(args.size() <= n, ErrorKind::MalformedInput,
            name + " takes at most " + std::to_string(n) + " arguments");
  };
  NamedModel m;
  if (name == "identity") {
    max_args(1);
    const Index n = as_count(arg(0, 3), "identity modes");
    m.v = identity_isometry(n);
    m.gauge = GaugeAction::u1(std::vector<int>(n, 1), std::vector<int>(n, 1));
  } else if (name == "shift") {
    max_args(2);
    const Index n = as_count(arg(0, 3), "shift modes");
    const Index species = as_count(arg(1, 1), "shift species");
    require(species >= 1, ErrorKind::MalformedInput, "shift needs at least one species");
    m.v = shift_isometry(n, species);
    if (species == 1)
      m.gauge = GaugeAction::u1(std::vector<int>(n, 1), std::vector<int>(n + 1, 1));
    else
      m.gauge = GaugeAction::un(static_cast<int>(species), n * species, (n + 1) * species);
  } else if (name == "flip" || name == "double-flip") {
    max_args(1);
    const Index n = as_count(arg(0, 3), "flip modes");
    const std::vector<Index> which = name == "flip" ? std::vector<Index>{0} : std::vector<Index>{0, 1};
    require(n >= static_cast<Index>(which.size()), ErrorKind::MalformedInput, "too few modes");
    m.v = flip_isometry(n, which);
    // Flipped modes must be neutral for V to commute with the phase action.
    std::vector<int> q(static_cast<std::size_t>(n), 1);
    for (Index i : which) q[static_cast<std::size_t>(i)] = 0;
    m.gauge = GaugeAction::u1(q, q);
  } else if (name == "pair-flip") {
    max_args(0);
    m.v = pair_flip_isometry();
    m.gauge = GaugeAction::u1({1, -1}, {1, -1});
  } else if (name == "bogoliubov") {
    max_args(1);
    m.v = bogoliubov_isometry(arg(0, M_PI / 6));
    m.gauge = GaugeAction::z2(2, 2);
  } else if (name == "squeeze") {
    max_args(1);
    m.v = squeeze_isometry(arg(0, 0.5));
    m.gauge = GaugeAction::z2(1, 1);
  } else if (name == "squeezed-shift") {
    max_args(1);
    m.v = squeezed_shift_isometry(arg(0, 0.5));
    m.gauge = GaugeAction::z2(1, 2);
  } else if (name == "charged-shift") {
    max_args(1);
    const Index w = as_count(arg(0, 2), "charged-shift width");
    m.v = charged_shift_isometry(w);
    m.gauge = GaugeAction::u1(charged_shift_charges(w, false), charged_shift_charges(w, true));
  } else if (name == "dirac-v") {
    max_args(2);
    m.dirac = true;
    m.dirac_w = as_count(arg(0, 512), "dirac-v window");
    m.dirac_m = as_count(arg(1, static_cast<double>(m.dirac_w / 4)), "dirac-v M_loc");
    m.gauge = GaugeAction::u1({}, {});
  } else {
    raise(ErrorKind::MalformedInput, "unknown builder '" + name + "'");
  }
  m.name = used.empty() ? name : name + "(" + format_args(used) + ")";
  return m;
}

NamedModel build_named(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto open = s.find('(');
  if (open == std::string::npos) return build_named(s, {});
  require(s.back() == ')', ErrorKind::MalformedInput, "builder '" + spec + "': missing ')'");
  const std::string name = s.substr(0, open);
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::vector<double> args;
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      raise(ErrorKind::MalformedInput, "builder '" + spec + "': bad argument '" + tok + "'");
    }
    require(used == tok.size() && std::isfinite(x), ErrorKind::MalformedInput,
            "builder '" + spec + "': bad argument '" + tok + "'");
    args.push_back(x);
  }
  return build_named(name, args);
}

}  // namespace qfree
