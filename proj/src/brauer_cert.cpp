#include "brauer_cert.hpp"

#include <utility>

#include "json.hpp"

namespace wacert::brauer {

using chat::ChateletParams;
using local::RamifiedPlace;
using local::RelElement;
using nf::FieldElement;
using nf::PrincipalPrime;

namespace {

int parity(long v) { return static_cast<int>(((v % 2) + 2) % 2); }

FieldElement quartic_value(const ChateletParams& p, const FieldElement& x) {
  FieldElement x2 = x * x;
  return p.b.generator() * (x2 - p.c.generator()) * (x2 - p.e.generator());
}

PointEval eval_at(const ChateletParams& p, const RamifiedPlace& P, const FieldElement& x) {
  FieldElement u = x * x + p.c.generator();
  RelElement xi{u, FieldElement(p.field, 1, 0)};
  if ((u * u - p.D).is_zero()) throw MathError("the symbol argument has zero norm");
  FieldElement q = quartic_value(p, x);
  if (q.is_zero()) throw MathError("the point lies on a degenerate fiber");

  PointEval ev{x, 0, 0, 0, 1};
  ev.val_symbol_arg = local::ramified_valuation(xi, P);
  ev.val_quartic = local::ramified_valuation(RelElement{q, FieldElement(p.field, 0, 0)}, P);
  ev.invariant_num = parity(ev.val_symbol_arg);
  ev.symbol = ev.invariant_num == 0 ? 1 : -1;
  return ev;
}

nlohmann::json point_json(const PointEval& ev) {
  nlohmann::json j;
  j["x"] = ev.x.to_string();
  j["val_quartic"] = ev.val_quartic;
  j["val_symbol_arg"] = ev.val_symbol_arg;
  j["invariant"] = ev.invariant_num == 0 ? "0" : "1/2";
  j["symbol"] = ev.symbol;
  return j;
}

}  // namespace

PointEval quaternion_invariant(const ChateletParams& p, const FieldElement& x) {
  RamifiedPlace P(p.c, p.D);
  if (nf::is_square_mod(p.a.generator(), p.c))
    throw MathError("the class needs a to be a nonsquare unit at the base prime");
  return eval_at(p, P, x);
}

bool archimedean_triviality(const FieldElement& a, const FieldElement& D) {
  std::vector<int> sa = nf::real_embedding_signs(a);
  std::vector<int> sD = nf::real_embedding_signs(D);
  for (size_t i = 0; i < sD.size(); ++i)
    if (sD[i] > 0 && sa[i] <= 0) return false;
  return true;
}

bool archimedean_triviality(const ChateletParams& p) {
  return archimedean_triviality(p.a.generator(), p.D);
}

WAFailureCertificate certify_wa_failure(const ChateletParams& p) {
  chat::verify_params(p);
  if (local::valuation(p.D, p.c) % 2 == 0)
    throw MathError("ramification premise: v_c(D) must be odd");
  RamifiedPlace P(p.c, p.D);

  FieldElement c = p.c.generator();
  WAFailureCertificate cert{p,
                            c.to_string(),
                            !nf::is_square_mod(p.a.generator(), p.c),
                            eval_at(p, P, c.inverse()),
                            eval_at(p, P, c),
                            archimedean_triviality(p),
                            false};
  cert.invariants_differ = cert.point_even.invariant_num != cert.point_odd.invariant_num;
  return cert;
}

std::string wa_failure_json(const WAFailureCertificate& cert) {
  nlohmann::json j;
  j["L"]["base"] = cert.params.field.delta0().get_si();
  j["L"]["D"] = cert.params.D.to_string();
  j["P_over"] = cert.place_over;
  j["points"] = nlohmann::json::array({point_json(cert.point_even), point_json(cert.point_odd)});
  j["archimedean_trivial"] = cert.archimedean_trivial;
  return j.dump(2);
}

VariantCertificate variant_wa_failure(const PrincipalPrime& a, const PrincipalPrime& b) {
  if (a.field().delta0() != b.field().delta0())
    throw MathError("parameters live in different fields");
  if (!b.is_odd()) throw MathError("the companion construction needs an odd prime b");
  if (a.same_ideal(b)) throw MathError("a and b must generate distinct prime ideals");
  if (nf::is_square_mod(a.generator(), b))
    throw MathError("the class needs a to be a nonsquare unit at p_b");

  const FieldElement& bg = b.generator();
  auto eval = [&](const FieldElement& x) {
    FieldElement arg = x * x + bg;
    FieldElement rhs = bg * bg - x * x * x * x;
    if (arg.is_zero() || rhs.is_zero()) throw MathError("the point lies on a degenerate fiber");
    PointEval ev{x, 0, 0, 0, 1};
    ev.val_symbol_arg = local::valuation(arg, b);
    ev.val_quartic = local::valuation(rhs, b);
    ev.invariant_num = parity(ev.val_symbol_arg);
    ev.symbol = ev.invariant_num == 0 ? 1 : -1;
    return ev;
  };

  VariantCertificate cert{a, b, eval(bg), eval(bg.inverse()), false};
  cert.invariants_differ = cert.point_odd.invariant_num != cert.point_even.invariant_num;
  return cert;
}

}  // namespace wacert::brauer
