#include "submod/risk_spec.hpp"

#include <charconv>
#include <type_traits>

#include "submod/errors.hpp"
#include "submod/measures.hpp"
#include "text.hpp"

namespace submod {

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

namespace {

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_number(xs[i]);
  }
  return out;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

RiskMeasureSpec make_var(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("VaR level must lie in (0,1)");
  return {spec::VaR{p}, "var:" + format_number(p)};
}

RiskMeasureSpec make_es(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("ES level must lie in [0,1)");
  return {spec::ES{p}, "es:" + format_number(p)};
}

RiskMeasureSpec make_aes(AdjustmentGrid grid) {
  std::string label = "aes:" + join_numbers(grid.levels()) + ":" + join_numbers(grid.penalties());
  return {spec::AES{std::move(grid)}, std::move(label)};
}

RiskMeasureSpec make_distortion(DistortionFunction phi) {
  phi.validate();
  std::string label = "distortion:" + phi.name;
  return {spec::Distortion{std::move(phi)}, std::move(label)};
}

RiskMeasureSpec make_expected_loss(LossFunction ell) {
  std::string label = "el:" + ell.name;
  return {spec::ExpectedLoss{std::move(ell)}, std::move(label)};
}

RiskMeasureSpec make_ce(LossFunction ell) {
  if (!ell.strictly_increasing) throw DomainError("CE needs a strictly increasing loss");
  std::string label = "ce:" + ell.name;
  return {spec::CE{std::move(ell)}, std::move(label)};
}

RiskMeasureSpec make_shortfall(LossFunction ell) {
  if (!ell.strictly_increasing || !ell.convex)
    throw DomainError("shortfall risk needs a strictly increasing convex loss");
  std::string label = "shortfall:" + ell.name;
  return {spec::Shortfall{std::move(ell)}, std::move(label)};
}

RiskMeasureSpec make_oce(LossFunction ell) {
  if (!ell.convex) throw DomainError("OCE needs a convex loss");
  std::string label = "oce:" + ell.name;
  return {spec::OCE{std::move(ell)}, std::move(label)};
}

RiskMeasureSpec make_mmd(DeviationWeight g, DistortionFunction phi) {
  if (!phi.concave) throw DomainError("mean-deviation measure needs a concave distortion");
  g.validate();
  std::string label = "mmd:" + g.name + ":" + phi.name;
  return {spec::MMD{std::move(g), std::move(phi)}, std::move(label)};
}

RiskMeasureSpec RiskMeasureSpec::parse(std::string_view raw) {
  const std::string_view t = text::trim(raw);
  const auto [head, tail] = text::head_tail(t);
  if (tail.empty()) throw DomainError("risk measure '" + std::string(t) + "' needs parameters");
  if (head == "var") return make_var(text::to_double(tail, "VaR level"));
  if (head == "es") return make_es(text::to_double(tail, "ES level"));
  if (head == "aes") {
    const auto [lv, pen] = text::head_tail(tail);
    return make_aes(AdjustmentGrid(text::to_doubles(lv, ',', "AES level"),
                                   text::to_doubles(pen, ',', "AES penalty")));
  }
  if (head == "distortion") return make_distortion(parse_distortion(tail));
  if (head == "el") return make_expected_loss(parse_loss(tail));
  if (head == "ce") return make_ce(parse_loss(tail));
  if (head == "shortfall") return make_shortfall(parse_loss(tail));
  if (head == "oce") return make_oce(parse_loss(tail));
  if (head == "mmd") {
    // g and φ both may carry ':' parameters; take the first split that parses
    for (std::size_t pos = tail.find(':'); pos != std::string_view::npos; pos = tail.find(':', pos + 1)) {
      try {
        auto g = parse_deviation_weight(tail.substr(0, pos));
        auto phi = parse_distortion(tail.substr(pos + 1));
        return make_mmd(std::move(g), std::move(phi));
      } catch (const DomainError&) {
      }
    }
    throw DomainError("cannot parse mean-deviation spec '" + std::string(t) + "' (expected mmd:<g>:<phi>)");
  }
  throw DomainError("unknown risk measure '" + std::string(t) + "'");
}

std::string RiskMeasureSpec::family() const {
  return std::visit(overloaded{
                        [](const spec::VaR&) { return std::string("VaR"); },
                        [](const spec::ES&) { return std::string("ES"); },
                        [](const spec::AES&) { return std::string("AES"); },
                        [](const spec::Distortion&) { return std::string("Distortion"); },
                        [](const spec::ExpectedLoss&) { return std::string("EL"); },
                        [](const spec::CE&) { return std::string("CE"); },
                        [](const spec::Shortfall&) { return std::string("Shortfall"); },
                        [](const spec::OCE&) { return std::string("OCE"); },
                        [](const spec::MMD&) { return std::string("MMD"); },
                    },
                    kind);
}

std::string RiskMeasureSpec::params() const {
  return std::visit(overloaded{
                        [](const spec::VaR& s) { return "p=" + format_number(s.p); },
                        [](const spec::ES& s) { return "p=" + format_number(s.p); },
                        [](const spec::AES& s) {
                          return "levels=" + join_numbers(s.grid.levels()) +
                                 ";penalties=" + join_numbers(s.grid.penalties());
                        },
                        [](const spec::Distortion& s) { return "phi=" + s.phi.name; },
                        [](const spec::ExpectedLoss& s) { return "loss=" + s.ell.name; },
                        [](const spec::CE& s) { return "loss=" + s.ell.name; },
                        [](const spec::Shortfall& s) { return "loss=" + s.ell.name; },
                        [](const spec::OCE& s) { return "loss=" + s.ell.name; },
                        [](const spec::MMD& s) { return "g=" + s.g.name + ";phi=" + s.phi.name; },
                    },
                    kind);
}

double RiskMeasureSpec::evaluate(const EmpiricalSample& sample) const {
  return std::visit(overloaded{
                        [&](const spec::VaR& s) { return var_historical(sample, s.p); },
                        [&](const spec::ES& s) { return es_historical(sample, s.p); },
                        [&](const spec::AES& s) { return aes(sample, s.grid); },
                        [&](const spec::Distortion& s) { return distortion_rho(sample, s.phi); },
                        [&](const spec::ExpectedLoss& s) { return expected_loss(sample, s.ell); },
                        [&](const spec::CE& s) { return certainty_equivalent(sample, s.ell); },
                        [&](const spec::Shortfall& s) { return shortfall_rho(sample, s.ell); },
                        [&](const spec::OCE& s) { return oce(sample, s.ell); },
                        [&](const spec::MMD& s) { return mmd_rho(sample, s.g, s.phi); },
                    },
                    kind);
}

}  // namespace submod
