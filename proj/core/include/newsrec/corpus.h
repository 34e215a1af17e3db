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

#ifndef NEWSREC_CORPUS_H_
#define NEWSREC_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace newsrec {

struct NewsItem {
  std::string id;
  std::string title;
  std::optional<std::string> category;
  std::optional<std::string> abstract;

  friend bool operator==(const NewsItem&, const NewsItem&) = default;
};

struct Impression {
  std::string news_id;
  bool clicked = false;

  friend bool operator==(const Impression&, const Impression&) = default;
};

// One logged impression list together with the user's reading history
// (oldest first). An empty history marks a cold-start session.
struct Session {
  std::string session_id;
  std::string user_id;
  std::vector<std::string> history;
  std::vector<Impression> shown;

  bool cold_start() const { return history.empty(); }
  std::size_t num_clicked() const;

  friend bool operator==(const Session&, const Session&) = default;
};

// Ordered news table with id lookup. Insertion order is preserved so that
// serialization and iteration are deterministic.
class NewsTable {
 public:
  // Throws ParseError naming the id on a duplicate.
  void Add(NewsItem item);
  // Adds unless an item with the same id is already present.
  bool AddIfAbsent(NewsItem item);

  const NewsItem* Find(std::string_view id) const;
  // Throws MissingIdError.
  const NewsItem& At(std::string_view id) const;
  // Dense index of an id, or npos.
  std::size_t IndexOf(std::string_view id) const;
  const NewsItem& operator[](std::size_t index) const { return items_[index]; }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const NewsTable& a, const NewsTable& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<NewsItem> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Corpus {
  NewsTable news;
  std::vector<Session> train_sessions;
  std::vector<Session> dev_sessions;

  // Checks that every referenced id resolves, that `shown` lists are
  // non-empty, and that train/dev session ids are disjoint. Throws Error.
  void Validate() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// MIND news.tsv: id, category, subcategory, title, abstract, url,
// title_entities, abstract_entities. Only the first four columns are
// required; url and entity columns are discarded.
NewsTable ParseNews(std::istream& tsv);

// MIND behaviors.tsv: impression_id, user_id, time, history, impressions.
std::vector<Session> ParseBehaviors(std::istream& tsv);

// Loads a MIND-style layout: `<dir>/news.tsv` and `<dir>/behaviors.tsv` for
// both splits. News tables are merged (first occurrence wins across files).
// Session ids are prefixed with "train-" / "dev-" because MIND restarts
// impression ids in every file.
Corpus LoadMindCorpus(const std::filesystem::path& train_dir,
                      const std::filesystem::path& dev_dir);

// JSON-lines dump. news.jsonl holds one NewsItem per line; sessions.jsonl
// holds one session per line with a "split" field ("train" or "dev").
void WriteNewsJsonl(const NewsTable& news, std::ostream& out);
void WriteSessionsJsonl(const Corpus& corpus, std::ostream& out);
NewsTable ReadNewsJsonl(std::istream& in);
void ReadSessionsJsonl(std::istream& in, Corpus& corpus);

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& dir);
Corpus LoadCorpus(const std::filesystem::path& dir);

}  // namespace newsrec

#endif  // NEWSREC_CORPUS_H_
