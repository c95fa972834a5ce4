#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#include "pricekit/error.hpp"
#include "pricekit/io.hpp"

namespace pricekit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Semicolon separated with optional double quotes ("" inside quotes is a literal quote).
std::vector<std::string> split_row(std::string_view line, long line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (size_t k = 0; k < line.size(); ++k) {
    char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"' && trim(cur).empty()) {
      quoted = was_quoted = true;
      cur.clear();
    } else if (ch == ';') {
      fields.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur += ch;
    }
  }
  if (quoted) throw Error(ErrorCode::MalformedRow, "unterminated quote on line " + std::to_string(line_no), line_no);
  fields.push_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

struct Section {
  long header_line = 0;
  std::vector<std::string> header;
  std::vector<std::pair<long, std::vector<std::string>>> rows;
  bool present = false;
};

int column(const Section& s, const std::string& name) {
  auto it = std::find(s.header.begin(), s.header.end(), name);
  return it == s.header.end() ? -1 : static_cast<int>(it - s.header.begin());
}

}  // namespace

PabulibInstance parse_pabulib(std::string_view text) {
  Section meta, projects, votes;
  Section* current = nullptr;
  long line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    std::string tag = upper(line);
    if (tag == "META" || tag == "PROJECTS" || tag == "VOTES") {
      current = tag == "META" ? &meta : tag == "PROJECTS" ? &projects : &votes;
      if (current->present) throw Error(ErrorCode::MalformedRow, "repeated section " + tag, line_no);
      current->present = true;
      continue;
    }
    if (!current) throw Error(ErrorCode::MalformedRow, "content before the first section", line_no);
    auto fields = split_row(line, line_no);
    if (current->header.empty()) {
      current->header = std::move(fields);
      current->header_line = line_no;
    } else {
      current->rows.emplace_back(line_no, std::move(fields));
    }
  }
  if (!meta.present) throw Error(ErrorCode::MissingSection, "META");
  if (!projects.present) throw Error(ErrorCode::MissingSection, "PROJECTS");
  if (!votes.present) throw Error(ErrorCode::MissingSection, "VOTES");

  PabulibInstance out;
  // META's first row is the key;value header.
  for (auto& [ln, f] : meta.rows) {
    if (f.size() < 2) throw Error(ErrorCode::MalformedRow, "META row needs key;value", ln);
    out.meta.emplace_back(f[0], f[1]);
  }

  const int pid = column(projects, "project_id"), pcost = column(projects, "cost");
  if (pid < 0) throw Error(ErrorCode::MalformedRow, "PROJECTS header lacks project_id", projects.header_line);
  std::unordered_map<std::string, int> known;
  for (auto& [ln, f] : projects.rows) {
    if (f.size() != projects.header.size()) throw Error(ErrorCode::MalformedRow, "PROJECTS row has wrong field count", ln);
    PabulibProject p;
    p.id = f[pid];
    if (pcost >= 0) p.cost = f[pcost];
    for (size_t k = 0; k < f.size(); ++k)
      if (static_cast<int>(k) != pid && static_cast<int>(k) != pcost) p.extras[projects.header[k]] = f[k];
    if (p.id.empty() || !known.emplace(p.id, static_cast<int>(out.projects.size())).second)
      throw Error(ErrorCode::MalformedRow, "empty or repeated project id", ln);
    out.projects.push_back(std::move(p));
  }

  const int vid = column(votes, "voter_id"), vvote = column(votes, "vote");
  if (vid < 0 || vvote < 0) throw Error(ErrorCode::MalformedRow, "VOTES header lacks voter_id or vote", votes.header_line);
  for (auto& [ln, f] : votes.rows) {
    if (f.size() != votes.header.size()) throw Error(ErrorCode::MalformedRow, "VOTES row has wrong field count", ln);
    PabulibVote v;
    v.voter_id = f[vid];
    std::string_view list = f[vvote];
    while (!list.empty()) {
      size_t comma = list.find(',');
      std::string_view item = trim(list.substr(0, comma));
      if (!item.empty()) {
        if (!known.count(std::string(item)))
          throw Error(ErrorCode::DanglingProjectReference, "line " + std::to_string(ln) + " votes for unknown project " + std::string(item), ln);
        v.projects.emplace_back(item);
      }
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
    }
    for (size_t k = 0; k < f.size(); ++k)
      if (static_cast<int>(k) != vid && static_cast<int>(k) != vvote) v.extras[votes.header[k]] = f[k];
    out.votes.push_back(std::move(v));
  }
  return out;
}

PabulibConversion pabulib_to_profile(const PabulibInstance& instance, SeededRng& rng) {
  PabulibConversion out;
  const int m = static_cast<int>(instance.projects.size());
  std::unordered_map<std::string, int> index;
  for (int c = 0; c < m; ++c) index.emplace(instance.projects[c].id, c);

  std::vector<int> voters;
  std::vector<std::set<int>> ballots(instance.votes.size());
  long total = 0;
  for (size_t v = 0; v < instance.votes.size(); ++v) {
    for (const auto& id : instance.votes[v].projects) ballots[v].insert(index.at(id));
    if (ballots[v].empty()) {
      ++out.empty_ballots_dropped;
    } else {
      voters.push_back(static_cast<int>(v));
      total += static_cast<long>(ballots[v].size());
    }
  }
  if (m <= 4) {
    out.rejection = "at most 4 projects";
    return out;
  }
  if (voters.empty() || total < 3 * static_cast<long>(voters.size())) {
    out.rejection = "mean ballot length below 3";
    return out;
  }

  if (static_cast<int>(voters.size()) > kPabulibVoterCap) {
    for (int t = 0; t < kPabulibVoterCap; ++t)
      std::swap(voters[t], voters[t + rng.below(voters.size() - t)]);
    voters.resize(kPabulibVoterCap);
    std::sort(voters.begin(), voters.end());
  }

  std::vector<int> remap(m, -1);
  std::vector<char> supported(m, 0);
  for (int v : voters)
    for (int c : ballots[v]) supported[c] = 1;
  for (int c = 0; c < m; ++c) {
    if (supported[c]) {
      remap[c] = static_cast<int>(out.candidate_ids.size());
      out.candidate_ids.push_back(instance.projects[c].id);
    } else {
      out.unsupported_dropped.push_back(instance.projects[c].id);
    }
  }
  std::vector<CandidateSet> approvals;
  for (int v : voters) {
    CandidateSet a;
    for (int c : ballots[v]) a.push_back(remap[c]);
    approvals.push_back(std::move(a));
    out.voter_ids.push_back(instance.votes[v].voter_id);
  }
  out.profile = build_profile(static_cast<int>(voters.size()), static_cast<int>(out.candidate_ids.size()),
                              std::move(approvals));
  return out;
}

}  // namespace pricekit
