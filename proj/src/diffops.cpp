#include "hyperlab/diffops.hpp"

#include <algorithm>
#include <sstream>

#include "hyperlab/error.hpp"

namespace hyperlab {

struct EulerOp::Node {
  Kind kind;
  Rational value;
  int index = 0;
  std::vector<EulerOp> children;
};

EulerOp EulerOp::scalar(const Rational& r) {
  return EulerOp(std::make_shared<const Node>(Node{Kind::Scalar, r, 0, {}}));
}

EulerOp EulerOp::var(int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  return EulerOp(std::make_shared<const Node>(Node{Kind::Var, 0, k, {}}));
}

EulerOp EulerOp::theta(int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::InvalidArgument, "variable index out of range");
  return EulerOp(std::make_shared<const Node>(Node{Kind::Theta, 0, k, {}}));
}

EulerOp EulerOp::sum(std::vector<EulerOp> terms) {
  if (terms.empty()) return scalar(0);
  return EulerOp(std::make_shared<const Node>(Node{Kind::Sum, 0, 0, std::move(terms)}));
}

EulerOp EulerOp::compose(std::vector<EulerOp> factors) {
  if (factors.empty()) return scalar(1);
  return EulerOp(std::make_shared<const Node>(Node{Kind::Compose, 0, 0, std::move(factors)}));
}

EulerOp::Kind EulerOp::kind() const { return node_->kind; }

int EulerOp::variable_depth() const {
  switch (node_->kind) {
    case Kind::Scalar:
    case Kind::Theta: return 0;
    case Kind::Var: return 1;
    case Kind::Sum: {
      int d = 0;
      for (const auto& c : node_->children) d = std::max(d, c.variable_depth());
      return d;
    }
    case Kind::Compose: {
      int d = 0;
      for (const auto& c : node_->children) d += c.variable_depth();
      return d;
    }
  }
  return 0;
}

std::string EulerOp::to_string() const {
  static const char* names[] = {"x", "y", "z"};
  std::ostringstream os;
  switch (node_->kind) {
    case Kind::Scalar: os << node_->value.get_str(); break;
    case Kind::Var: os << names[node_->index]; break;
    case Kind::Theta: os << "th_" << names[node_->index]; break;
    case Kind::Sum:
      os << '(';
      for (size_t i = 0; i < node_->children.size(); ++i) {
        if (i) os << " + ";
        os << node_->children[i].to_string();
      }
      os << ')';
      break;
    case Kind::Compose:
      for (size_t i = 0; i < node_->children.size(); ++i) {
        if (i) os << '*';
        os << node_->children[i].to_string();
      }
      break;
  }
  return os.str();
}

EulerOp operator+(const EulerOp& a, const EulerOp& b) { return EulerOp::sum({a, b}); }
EulerOp operator-(const EulerOp& a, const EulerOp& b) {
  return EulerOp::sum({a, EulerOp::compose({EulerOp::scalar(-1), b})});
}
EulerOp operator*(const EulerOp& a, const EulerOp& b) { return EulerOp::compose({a, b}); }
EulerOp operator*(const Rational& s, const EulerOp& a) {
  return EulerOp::compose({EulerOp::scalar(s), a});
}

TruncatedSeries apply(const EulerOp& op, const TruncatedSeries& s) {
  using Kind = EulerOp::Kind;
  const auto& node = *op.node_;
  switch (node.kind) {
    case Kind::Scalar: return node.value * s;
    case Kind::Theta: {
      TruncatedSeries out(s.nvars(), s.order());
      for (const auto& [e, c] : s.terms()) out.set(e, c * e[node.index]);
      return out;
    }
    case Kind::Var: {
      if (node.index >= s.nvars()) {
        throw Error(ErrorCode::InvalidArgument, "operator variable not present in series");
      }
      TruncatedSeries out(s.nvars(), s.order() - 1);
      for (const auto& [e, c] : s.terms()) {
        Exponent f = e;
        ++f[node.index];
        out.set(f, c);
      }
      return out;
    }
    case Kind::Sum: {
      std::vector<TruncatedSeries> parts;
      int order = s.order();
      for (const auto& c : node.children) {
        parts.push_back(apply(c, s));
        order = std::min(order, parts.back().order());
      }
      TruncatedSeries out(s.nvars(), order);
      for (const auto& part : parts) out += part.truncated(order);
      return out;
    }
    case Kind::Compose: {
      TruncatedSeries cur = s;
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
        cur = apply(*it, cur);
      }
      return cur;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "malformed operator");
}

const char* system_name(SystemName name) {
  switch (name) {
    case SystemName::E: return "E";
    case SystemName::E1: return "E1";
    case SystemName::E2: return "E2";
    case SystemName::ED3: return "ED3";
    case SystemName::EX3: return "EX3";
  }
  return "?";
}

namespace {

using Op = EulerOp;

Op num(const Rational& r) { return Op::scalar(r); }

size_t arity(SystemName name) {
  switch (name) {
    case SystemName::E: return 3;
    case SystemName::E1: return 4;
    default: return 5;
  }
}

}  // namespace

OperatorSystem build_system(SystemName name, std::span<const Rational> params, Q2Factor q2) {
  if (params.size() != arity(name)) {
    throw Error(ErrorCode::ArityMismatch, std::string(system_name(name)) + " expects " +
                                              std::to_string(arity(name)) + " parameters");
  }
  OperatorSystem sys{name, {params.begin(), params.end()}, {}, {}, 0};
  const auto& p = sys.params;
  const Op x = Op::var(0), y = Op::var(1), z = Op::var(2);
  const Op D = Op::theta(0), Dp = Op::theta(1), Dz = Op::theta(2);
  const Rational one(1);
  switch (name) {
    case SystemName::E: {
      const Rational &a = p[0], &b = p[1], &c = p[2];
      sys.nvars = 1;
      sys.operators = {D * (D + num(c - one)) - x * (D + num(a)) * (D + num(b))};
      sys.labels = {"P"};
      break;
    }
    case SystemName::E1: {
      // x*P1, y*Q1 and x*y*R1, with denominators cleared.
      const Rational &a = p[0], &b = p[1], &bp = p[2], &c = p[3];
      sys.nvars = 2;
      const Op S = D + Dp;
      sys.operators = {
          D * (S + num(c - one)) - x * (S + num(a)) * (D + num(b)),
          Dp * (S + num(c - one)) - y * (S + num(a)) * (Dp + num(bp)),
          x * D * Dp - y * D * Dp - num(bp) * y * D + num(b) * x * Dp,
      };
      sys.labels = {"P1", "Q1", "R1"};
      break;
    }
    case SystemName::E2: {
      const Rational &a = p[0], &b = p[1], &bp = p[2], &c = p[3], &cp = p[4];
      sys.nvars = 2;
      const Op S = D + Dp;
      const Op last = q2 == Q2Factor::Primed ? Dp + num(bp) : D + num(bp);
      sys.operators = {
          D * (D + num(c - one)) - x * (S + num(a)) * (D + num(b)),
          Dp * (Dp + num(cp - one)) - y * (S + num(a)) * last,
      };
      sys.labels = {"P2", "Q2"};
      break;
    }
    case SystemName::ED3: {
      const Rational &a = p[0], &c = p[4];
      const Rational bs[3] = {p[1], p[2], p[3]};
      sys.nvars = 3;
      const Op d[3] = {D, Dp, Dz};
      const Op v[3] = {x, y, z};
      const Op delta = D + Dp + Dz;
      for (int i = 0; i < 3; ++i) {
        sys.operators.push_back(d[i] * (delta + num(c - one)) -
                                v[i] * (d[i] + num(bs[i])) * (delta + num(a)));
        sys.labels.push_back("diag" + std::to_string(i + 1));
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          sys.operators.push_back(v[i] * (d[i] + num(bs[i])) * d[j] -
                                  v[j] * (d[j] + num(bs[j])) * d[i]);
          sys.labels.push_back("mixed" + std::to_string(i + 1) + std::to_string(j + 1));
        }
      }
      break;
    }
    case SystemName::EX3: {
      // Variables (x1, x3, x4) map to slots 0, 1, 2.
      const Rational &a2 = p[0], &a3 = p[1], &a4 = p[2], &a5 = p[3], &a6 = p[4];
      sys.nvars = 3;
      const Op& t1 = D;
      const Op& t3 = Dp;
      const Op& t4 = Dz;
      const Op theta = t1 + t3 + t4;
      const Op lead = theta + num(a2 + a3 + a4 - one);
      const Op u13 = t1 + t3 + num(one - a5);
      const Op u34 = t3 + t4 + num(a3);
      const Op u4 = t4 + num(one - a6);
      sys.operators = {
          lead * t1 - x * u13 * (t1 + num(a2)),
          lead * t3 - y * u13 * u34,
          lead * t4 - z * u4 * u34,
          y * u13 * t4 - z * u4 * t3,
          x * (t1 + num(a2)) * t3 - y * u34 * t1,
      };
      sys.labels = {"L1", "L2", "L3", "L4", "L5"};
      break;
    }
  }
  return sys;
}

AnnihilationReport certify_annihilation(const OperatorSystem& sys, const TruncatedSeries& s) {
  if (s.order() < 2) throw Error(ErrorCode::InvalidArgument, "certification needs order >= 2");
  if (s.nvars() != sys.nvars) {
    throw Error(ErrorCode::ArityMismatch, "series variables do not match the system");
  }
  AnnihilationReport report;
  report.certified_order = s.order();
  for (size_t i = 0; i < sys.operators.size(); ++i) {
    const TruncatedSeries r = apply(sys.operators[i], s);
    report.certified_order = std::min(report.certified_order, r.order());
    for (const auto& [e, c] : r.terms()) {
      const int deg = total_degree(e);
      if (!report.max_nonzero_order || deg > *report.max_nonzero_order) {
        report.max_nonzero_order = deg;
      }
      // Lowest-degree witness is the most informative one.
      if (!report.witness || deg < total_degree(*report.witness)) {
        report.witness = e;
        report.witness_operator = sys.labels[i];
      }
    }
  }
  return report;
}

}  // namespace hyperlab
