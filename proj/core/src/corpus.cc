// Copyright 2026 The newsrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "newsrec/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "newsrec/errors.h"

namespace newsrec {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string_view> SplitSpaces(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t end = std::min(text.find(' ', pos), text.size());
    if (end > pos) tokens.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::optional<std::string> NonEmpty(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

}  // namespace

std::size_t Session::num_clicked() const {
  return static_cast<std::size_t>(
      std::count_if(shown.begin(), shown.end(),
                    [](const Impression& i) { return i.clicked; }));
}

void NewsTable::Add(NewsItem item) {
  if (index_.count(item.id) != 0) {
    throw ParseError("duplicate news id '" + item.id + "'");
  }
  AddIfAbsent(std::move(item));
}

bool NewsTable::AddIfAbsent(NewsItem item) {
  if (item.id.empty()) throw ParseError("news id must be non-empty");
  if (item.title.empty()) {
    throw ParseError("news '" + item.id + "' has an empty title");
  }
  if (index_.count(item.id) != 0) return false;
  index_.emplace(item.id, items_.size());
  items_.push_back(std::move(item));
  return true;
}

const NewsItem* NewsTable::Find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

const NewsItem& NewsTable::At(std::string_view id) const {
  const NewsItem* item = Find(id);
  if (item == nullptr) {
    throw MissingIdError("unknown news id '" + std::string(id) + "'");
  }
  return *item;
}

std::size_t NewsTable::IndexOf(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? npos : it->second;
}

void Corpus::Validate() const {
  std::unordered_set<std::string> train_ids;
  auto check = [&](const Session& s) {
    if (s.shown.empty()) {
      throw Error("session '" + s.session_id + "' has no shown candidates");
    }
    for (const auto& id : s.history) {
      if (news.Find(id) == nullptr) {
        throw MissingIdError("session '" + s.session_id +
                             "' references unknown history id '" + id + "'");
      }
    }
    for (const auto& imp : s.shown) {
      if (news.Find(imp.news_id) == nullptr) {
        throw MissingIdError("session '" + s.session_id +
                             "' references unknown candidate id '" +
                             imp.news_id + "'");
      }
    }
  };
  for (const auto& s : train_sessions) {
    check(s);
    train_ids.insert(s.session_id);
  }
  for (const auto& s : dev_sessions) {
    check(s);
    if (train_ids.count(s.session_id) != 0) {
      throw Error("session id '" + s.session_id +
                  "' appears in both train and dev");
    }
  }
}

NewsTable ParseNews(std::istream& tsv) {
  NewsTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(tsv, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields.size() < 4) {
      throw ParseError("news.tsv line " + std::to_string(line_no) +
                       ": expected at least 4 tab-separated columns, got " +
                       std::to_string(fields.size()));
    }
    NewsItem item;
    item.id = std::string(fields[0]);
    item.category = NonEmpty(fields[1]);
    item.title = std::string(fields[3]);
    if (fields.size() > 4) item.abstract = NonEmpty(fields[4]);
    if (item.id.empty() || item.title.empty()) {
      throw ParseError("news.tsv line " + std::to_string(line_no) +
                       ": empty id or title");
    }
    if (table.Find(item.id) != nullptr) {
      throw ParseError("news.tsv line " + std::to_string(line_no) +
                       ": duplicate news id '" + item.id + "'");
    }
    table.Add(std::move(item));
  }
  return table;
}

std::vector<Session> ParseBehaviors(std::istream& tsv) {
  std::vector<Session> sessions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(tsv, line)) {
    ++line_no;
    StripCarriageReturn(line);
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    const std::string where = "behaviors.tsv line " + std::to_string(line_no);
    if (fields.size() != 5) {
      throw ParseError(where + ": expected 5 tab-separated columns, got " +
                       std::to_string(fields.size()));
    }
    Session s;
    s.session_id = std::string(fields[0]);
    s.user_id = std::string(fields[1]);
    if (s.session_id.empty()) throw ParseError(where + ": empty impression id");
    for (auto id : SplitSpaces(fields[3])) s.history.emplace_back(id);
    for (auto token : SplitSpaces(fields[4])) {
      const std::size_t dash = token.rfind('-');
      const bool ok = dash != std::string_view::npos && dash > 0 &&
                      dash + 2 == token.size() &&
                      (token[dash + 1] == '0' || token[dash + 1] == '1');
      if (!ok) {
        throw ParseError(where + ": invalid impression token '" +
                         std::string(token) + "' (expected <id>-0 or <id>-1)");
      }
      s.shown.push_back(
          {std::string(token.substr(0, dash)), token[dash + 1] == '1'});
    }
    if (s.shown.empty()) throw ParseError(where + ": no impressions");
    sessions.push_back(std::move(s));
  }
  return sessions;
}

Corpus LoadMindCorpus(const std::filesystem::path& train_dir,
                      const std::filesystem::path& dev_dir) {
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open '" + p.string() + "'");
    return in;
  };
  Corpus corpus;
  for (const auto& dir : {train_dir, dev_dir}) {
    auto in = open(dir / "news.tsv");
    for (auto& item : ParseNews(in)) corpus.news.AddIfAbsent(item);
  }
  auto load_sessions = [&](const std::filesystem::path& dir,
                           const std::string& prefix) {
    auto in = open(dir / "behaviors.tsv");
    auto sessions = ParseBehaviors(in);
    for (auto& s : sessions) s.session_id = prefix + s.session_id;
    return sessions;
  };
  corpus.train_sessions = load_sessions(train_dir, "train-");
  corpus.dev_sessions = load_sessions(dev_dir, "dev-");
  corpus.Validate();
  return corpus;
}

}  // namespace newsrec
