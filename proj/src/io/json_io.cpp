#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pricekit/error.hpp"
#include "pricekit/io.hpp"

namespace pricekit {
namespace {

using json = nlohmann::ordered_json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what(), static_cast<long>(e.byte));
  }
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return obj.at(key);
}

template <class T>
T get_as(const json& v, const std::string& where) {
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, where + ": " + e.what());
  }
}

Rational fraction(const json& v, const std::string& where) {
  try {
    return parse_rational(get_as<std::string>(v, where));
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, where + ": " + e.what());
  }
}

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back({p.x, p.y});
  return a;
}

std::vector<Point> points_from(const json& a, const std::string& where) {
  std::vector<Point> out;
  for (size_t k = 0; k < get_as<json::array_t>(a, where).size(); ++k) {
    auto xy = get_as<std::vector<double>>(a[k], where + "[" + std::to_string(k) + "]");
    if (xy.size() != 2) throw Error(ErrorCode::ParseError, where + "[" + std::to_string(k) + "]: expected [x, y]");
    out.push_back({xy[0], xy[1]});
  }
  return out;
}

}  // namespace

std::string write_profile_json(const ProfileDocument& doc) {
  const ApprovalProfile& a = doc.profile;
  json j;
  j["n"] = a.voter_count();
  j["m"] = a.candidate_count();
  j["approvals"] = a.all_approvals();
  if (a.weights()) {
    json w = json::array();
    for (const auto& x : *a.weights()) w.push_back(to_fraction_string(x));
    j["weights"] = std::move(w);
  }
  if (doc.voter_points || doc.candidate_points) {
    j["points"] = {{"voters", points_json(doc.voter_points.value_or(std::vector<Point>{}))},
                   {"candidates", points_json(doc.candidate_points.value_or(std::vector<Point>{}))}};
  }
  if (doc.radius) j["radius"] = *doc.radius;
  if (doc.seed) j["seed"] = *doc.seed;
  return j.dump(1) + "\n";
}

ProfileDocument read_profile_json(std::string_view text) {
  json j = parse_document(text);
  ProfileDocument doc;
  const int n = get_as<int>(field(j, "n"), "n");
  const int m = get_as<int>(field(j, "m"), "m");
  auto approvals = get_as<std::vector<CandidateSet>>(field(j, "approvals"), "approvals");
  if (static_cast<int>(approvals.size()) != n) throw Error(ErrorCode::ParseError, "approvals: expected n ballots");
  std::optional<std::vector<Rational>> weights;
  if (j.contains("weights")) {
    weights.emplace();
    const json& w = j.at("weights");
    for (size_t k = 0; k < get_as<json::array_t>(w, "weights").size(); ++k)
      weights->push_back(fraction(w[k], "weights[" + std::to_string(k) + "]"));
  }
  doc.profile = build_profile(n, m, std::move(approvals), std::move(weights));
  if (j.contains("points")) {
    doc.voter_points = points_from(field(j["points"], "voters"), "points.voters");
    doc.candidate_points = points_from(field(j["points"], "candidates"), "points.candidates");
  }
  if (j.contains("radius")) doc.radius = get_as<double>(j["radius"], "radius");
  if (j.contains("seed")) doc.seed = get_as<std::uint64_t>(j["seed"], "seed");
  return doc;
}

std::string write_price_system(const PriceSystem& ps) {
  const Committee& w = ps.committee();
  json j;
  j["m"] = w.candidate_count();
  j["committee"] = w.members();
  json pay = json::array();
  for (int i = 0; i < ps.voter_count(); ++i)
    for (int s = 0; s < w.size(); ++s)
      if (sgn(ps.payment_at(i, s)) != 0)
        pay.push_back({{"voter", i}, {"candidate", w.members()[s]}, {"value", to_fraction_string(ps.payment_at(i, s))}});
  j["payments"] = std::move(pay);
  json res = json::array();
  for (const auto& r : ps.residuals()) res.push_back(to_fraction_string(r));
  j["residuals"] = std::move(res);
  return j.dump(1) + "\n";
}

PriceSystem read_price_system(std::string_view text) {
  json j = parse_document(text);
  auto members = get_as<std::vector<int>>(field(j, "committee"), "committee");
  int m = 0;
  if (j.contains("m")) {
    m = get_as<int>(j["m"], "m");
  } else {
    for (int c : members) m = std::max(m, c + 1);
  }
  const json& res = field(j, "residuals");
  const int n = static_cast<int>(get_as<json::array_t>(res, "residuals").size());
  Committee committee;
  try {
    committee = make_committee(m, members);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, std::string("committee: ") + e.what());
  }
  PriceSystem ps(committee, n);
  for (int i = 0; i < n; ++i) ps.set_residual(i, fraction(res[i], "residuals[" + std::to_string(i) + "]"));
  const json& pay = field(j, "payments");
  for (size_t k = 0; k < get_as<json::array_t>(pay, "payments").size(); ++k) {
    const std::string where = "payments[" + std::to_string(k) + "]";
    const int voter = get_as<int>(field(pay[k], "voter"), where + ".voter");
    const int candidate = get_as<int>(field(pay[k], "candidate"), where + ".candidate");
    if (voter < 0 || voter >= n) throw Error(ErrorCode::ParseError, where + ": voter out of range");
    if (candidate < 0 || candidate >= m || !committee.contains(candidate))
      throw Error(ErrorCode::ParseError, where + ": candidate not in committee");
    ps.payment_at(voter, committee.position(candidate)) = fraction(field(pay[k], "value"), where + ".value");
  }
  return ps;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace pricekit
