#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pricekit/gen.hpp"
#include "pricekit/price_system.hpp"

namespace pricekit {

// ---- Pabulib ---------------------------------------------------------------

struct PabulibProject {
  std::string id;
  std::string cost;
  std::map<std::string, std::string> extras;
};

struct PabulibVote {
  std::string voter_id;
  std::vector<std::string> projects;
  std::map<std::string, std::string> extras;
};

struct PabulibInstance {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<PabulibProject> projects;
  std::vector<PabulibVote> votes;
};

// Sections META, PROJECTS and VOTES, semicolon separated, each with a header row.
// Throws MissingSection, MalformedRow(line) or DanglingProjectReference(line); lines are 1-based.
PabulibInstance parse_pabulib(std::string_view text);

struct PabulibConversion {
  std::optional<ApprovalProfile> profile;  // empty when rejected
  std::string rejection;
  std::vector<std::string> candidate_ids;  // profile candidate index -> project id
  std::vector<std::string> voter_ids;      // profile voter index -> voter id
  int empty_ballots_dropped = 0;
  std::vector<std::string> unsupported_dropped;
};

inline constexpr int kPabulibVoterCap = 500;

// Drops empty ballots, rejects unless more than 4 projects and mean ballot length >= 3,
// subsamples to 500 voters, then drops projects left without supporters.
PabulibConversion pabulib_to_profile(const PabulibInstance& instance, SeededRng& rng);

// ---- JSON documents ----------------------------------------------------------

struct ProfileDocument {
  ApprovalProfile profile;
  std::optional<std::vector<Point>> voter_points;
  std::optional<std::vector<Point>> candidate_points;
  std::optional<double> radius;
  std::optional<std::uint64_t> seed;
};

// {n, m, approvals, weights?, points?: {voters, candidates}, radius?, seed?}; weights as "num/den".
std::string write_profile_json(const ProfileDocument& doc);
// Throws ParseError with the offending location.
ProfileDocument read_profile_json(std::string_view text);

// {m, committee, payments: [{voter, candidate, value}], residuals}; zero payments omitted.
std::string write_price_system(const PriceSystem& ps);
PriceSystem read_price_system(std::string_view text);

// Throw Error(Io) naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace pricekit
