// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/equation_opt.hpp"

#include "mom/error.hpp"

#include <cassert>
#include <functional>
#include <map>

namespace mom {

SymExpr SymExpr::leaf(ValueId v, LinneaType t) {
  SymExpr e;
  e.kind = Kind::Leaf;
  e.value = v;
  e.type = std::move(t);
  return e;
}

SymExpr SymExpr::node(Kind kind, std::vector<SymExpr> children) {
  SymExpr e;
  e.kind = kind;
  e.children = std::move(children);
  return e;
}

bool SymExpr::isIdentityLeaf() const {
  return kind == Kind::Leaf && type && isIdentity(*type);
}

namespace {

// Splices same-kind Mul/Add children into their parent.
void appendFlattened(std::vector<SymExpr> &out, SymExpr child,
                     SymExpr::Kind kind) {
  bool variadic = kind == SymExpr::Kind::Mul || kind == SymExpr::Kind::Add;
  if (variadic && child.kind == kind) {
    for (SymExpr &grand : child.children)
      out.push_back(std::move(grand));
  } else {
    out.push_back(std::move(child));
  }
}

} // namespace

SymExpr symbolize(const Op &equation, const IRModule &m) {
  assert(equation.kind == OpKind::Equation && !equation.region.empty());
  std::map<ValueId, const Op *> defs;
  for (const Op &op : equation.region)
    if (op.producesValue())
      defs[op.result] = &op;

  std::function<SymExpr(ValueId)> walk = [&](ValueId v) -> SymExpr {
    auto it = defs.find(v);
    if (it == defs.end())
      return SymExpr::leaf(v, m.typeOf(v));
    const Op &op = *it->second;
    SymExpr::Kind kind = op.kind == OpKind::Mul   ? SymExpr::Kind::Mul
                         : op.kind == OpKind::Add ? SymExpr::Kind::Add
                                                  : SymExpr::Kind::Trans;
    std::vector<SymExpr> children;
    for (ValueId operand : op.operands)
      appendFlattened(children, walk(operand), kind);
    return SymExpr::node(kind, std::move(children));
  };

  const Op &yield = equation.region.back();
  assert(yield.kind == OpKind::Yield);
  return walk(yield.operands.front());
}

SymExpr simplifyIdentities(const SymExpr &e) {
  if (e.kind == SymExpr::Kind::Leaf)
    return e;

  std::vector<SymExpr> children;
  for (const SymExpr &c : e.children)
    appendFlattened(children, simplifyIdentities(c), e.kind);

  switch (e.kind) {
  case SymExpr::Kind::Trans:
    if (children.front().isIdentityLeaf())
      return children.front();
    return SymExpr::node(e.kind, std::move(children));
  case SymExpr::Kind::Mul: {
    std::vector<SymExpr> kept;
    for (SymExpr &c : children)
      if (!c.isIdentityLeaf())
        kept.push_back(std::move(c));
    if (kept.empty())
      return children.front(); // I * I = I
    if (kept.size() == 1)
      return kept.front();
    return SymExpr::node(e.kind, std::move(kept));
  }
  case SymExpr::Kind::Add:
  case SymExpr::Kind::Leaf:
    break;
  }
  return SymExpr::node(e.kind, std::move(children));
}

namespace {

std::string shapeStr(Dims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

} // namespace

SymExpr resolveTypes(const SymExpr &e) {
  if (e.kind == SymExpr::Kind::Leaf) {
    if (!e.type || isTerm(*e.type))
      throw CompileError(ErrorKind::UnresolvedTerm,
                         "leaf operand has no concrete type");
    return e;
  }

  SymExpr out = SymExpr::node(e.kind, {});
  for (const SymExpr &c : e.children)
    out.children.push_back(resolveTypes(c));

  const LinneaType &first = *out.children.front().type;
  MatrixType t;
  t.elem = elemOf(first);

  switch (e.kind) {
  case SymExpr::Kind::Trans: {
    Dims d = dimsOf(first);
    t.rows = d.cols;
    t.cols = d.rows;
    t.props = inferTranspose(propsOf(first));
    break;
  }
  case SymExpr::Kind::Mul: {
    Dims acc = dimsOf(first);
    PropertySet props = propsOf(first);
    for (std::size_t i = 1; i < out.children.size(); ++i) {
      const LinneaType &next = *out.children[i].type;
      Dims d = dimsOf(next);
      if (acc.cols != d.rows)
        throw CompileError(ErrorKind::DimMismatch,
                           "cannot multiply " + shapeStr(acc) + " by " +
                               shapeStr(d));
      props = inferMul(props, acc, propsOf(next), d);
      acc = {acc.rows, d.cols};
    }
    t.rows = acc.rows;
    t.cols = acc.cols;
    t.props = props;
    break;
  }
  case SymExpr::Kind::Add: {
    Dims d = dimsOf(first);
    PropertySet props = propsOf(first);
    for (std::size_t i = 1; i < out.children.size(); ++i) {
      const LinneaType &next = *out.children[i].type;
      if (!(dimsOf(next) == d))
        throw CompileError(ErrorKind::DimMismatch,
                           "cannot add " + shapeStr(d) + " and " +
                               shapeStr(dimsOf(next)));
      props = inferAdd(props, propsOf(next));
    }
    t.rows = d.rows;
    t.cols = d.cols;
    t.props = props;
    break;
  }
  case SymExpr::Kind::Leaf:
    break;
  }
  out.type = t;
  return out;
}

namespace {

class Rematerializer {
public:
  Rematerializer(IRModule &out, const OptOptions &opts,
                 const std::vector<std::string> &labels,
                 const std::string &equation, std::vector<ChainRecord> *chains)
      : out_(out), opts_(opts), labels_(labels), equation_(equation),
        chains_(chains) {}

  ValueId emit(const SymExpr &e) {
    switch (e.kind) {
    case SymExpr::Kind::Leaf:
      return e.value;
    case SymExpr::Kind::Trans: {
      ValueId in = emit(e.children.front());
      return binary(OpKind::Transpose, {in}, *e.type);
    }
    case SymExpr::Kind::Add: {
      ValueId acc = emit(e.children.front());
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        ValueId rhs = emit(e.children[i]);
        const LinneaType &lt = out_.typeOf(acc);
        const LinneaType &rt = out_.typeOf(rhs);
        MatrixType t{dimsOf(lt).rows, dimsOf(lt).cols, elemOf(lt),
                     inferAdd(propsOf(lt), propsOf(rt))};
        acc = binary(OpKind::Add, {acc, rhs}, t);
      }
      return acc;
    }
    case SymExpr::Kind::Mul:
      return product(e);
    }
    return kNoValue;
  }

private:
  ValueId binary(OpKind kind, std::vector<ValueId> operands, LinneaType t) {
    Op op{kind};
    op.operands = std::move(operands);
    op.result = out_.addValue(std::move(t));
    out_.body.push_back(op);
    return op.result;
  }

  std::string label(const SymExpr &e) const {
    switch (e.kind) {
    case SymExpr::Kind::Leaf:
      if (e.value < labels_.size() && !labels_[e.value].empty())
        return labels_[e.value];
      return "%" + std::to_string(e.value);
    case SymExpr::Kind::Trans:
      return "transpose(" + label(e.children.front()) + ")";
    case SymExpr::Kind::Mul:
    case SymExpr::Kind::Add: {
      std::string s = "(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i)
          s += e.kind == SymExpr::Kind::Mul ? "*" : "+";
        s += label(e.children[i]);
      }
      return s + ")";
    }
    }
    return "?";
  }

  ValueId product(const SymExpr &e) {
    std::vector<ValueId> values;
    std::vector<ChainOperand> chain;
    for (const SymExpr &c : e.children) {
      ValueId v = emit(c);
      const LinneaType &t = out_.typeOf(v);
      values.push_back(v);
      chain.push_back({dimsOf(t), propsOf(t), label(c)});
    }

    ChainSolution optimal = optimalParenthesization(chain);
    ChainTreePtr baseline = leftAssociated(chain.size());
    ChainTreePtr chosen = opts_.reorderChains ? optimal.tree() : baseline;

    ElemKind elem = elemOf(*e.type);
    std::function<ValueId(const ChainTree &)> build =
        [&](const ChainTree &t) -> ValueId {
      if (t.isLeaf())
        return values[t.first];
      ValueId l = build(*t.left);
      ValueId r = build(*t.right);
      const LinneaType &lt = out_.typeOf(l);
      const LinneaType &rt = out_.typeOf(r);
      MatrixType mt{dimsOf(lt).rows, dimsOf(rt).cols, elem,
                    inferMul(propsOf(lt), dimsOf(lt), propsOf(rt),
                             dimsOf(rt))};
      return binary(OpKind::Mul, {l, r}, mt);
    };
    ValueId root = build(*chosen);

    if (chains_) {
      ChainRecord rec{equation_, chain, optimal, chosen,
                      evaluateTree(*chosen, chain).cost,
                      evaluateTree(*baseline, chain).cost};
      chains_->push_back(std::move(rec));
    }
    return root;
  }

  IRModule &out_;
  const OptOptions &opts_;
  const std::vector<std::string> &labels_;
  const std::string &equation_;
  std::vector<ChainRecord> *chains_;
};

SymExpr remapLeaves(const SymExpr &e, const std::map<ValueId, ValueId> &remap,
                    const IRModule &out) {
  if (e.kind == SymExpr::Kind::Leaf) {
    ValueId v = remap.at(e.value);
    return SymExpr::leaf(v, out.typeOf(v));
  }
  SymExpr n = SymExpr::node(e.kind, {});
  for (const SymExpr &c : e.children)
    n.children.push_back(remapLeaves(c, remap, out));
  return n;
}

} // namespace

ValueId rematerialize(const SymExpr &resolved, IRModule &out,
                      const OptOptions &opts,
                      const std::vector<std::string> &labels,
                      const std::string &equation,
                      std::vector<ChainRecord> *chains) {
  return Rematerializer(out, opts, labels, equation, chains).emit(resolved);
}

OptResult optimizeEquations(const IRModule &m, const OptOptions &opts) {
  OptResult result{IRModule{}, {}};
  IRModule &out = result.module;
  out.level = IRModule::Level::Low;
  std::map<ValueId, ValueId> remap;
  std::vector<std::string> labels;

  auto setLabel = [&](ValueId v, const std::string &s) {
    if (labels.size() <= v)
      labels.resize(v + 1);
    labels[v] = s;
  };

  for (const Op &op : m.body) {
    switch (op.kind) {
    case OpKind::Init: {
      Op copy = op;
      copy.result = out.addValue(m.typeOf(op.result));
      remap[op.result] = copy.result;
      setLabel(copy.result, op.label);
      out.body.push_back(std::move(copy));
      break;
    }
    case OpKind::Fill:
    case OpKind::Print: {
      Op copy = op;
      for (ValueId &v : copy.operands)
        v = remap.at(v);
      out.body.push_back(std::move(copy));
      break;
    }
    case OpKind::Equation: {
      SymExpr e = remapLeaves(symbolize(op, m), remap, out);
      if (opts.simplifyIdentities)
        e = simplifyIdentities(e);
      e = resolveTypes(e);
      std::size_t before = out.numValues();
      ValueId root =
          rematerialize(e, out, opts, labels, op.label, &result.chains);
      remap[op.result] = root;
      // A rematerialized root takes the target's name; a bare leaf keeps its own.
      if (root >= before && !op.label.empty())
        setLabel(root, op.label);
      break;
    }
    case OpKind::Mul:
    case OpKind::Add:
    case OpKind::Transpose:
    case OpKind::Yield:
      throw CompileError(ErrorKind::Verify,
                         std::string(toString(op.kind)) +
                             " outside an equation in a high-level module");
    }
  }
  return result;
}

} // namespace mom
