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

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "newsrec/corpus.h"
#include "newsrec/errors.h"

namespace newsrec {
namespace {

using nlohmann::json;

json NewsToJson(const NewsItem& item) {
  json j = {{"id", item.id}, {"title", item.title}};
  if (item.category) j["category"] = *item.category;
  if (item.abstract) j["abstract"] = *item.abstract;
  return j;
}

json SessionToJson(const Session& s, const char* split) {
  json shown = json::array();
  for (const auto& imp : s.shown) {
    shown.push_back({{"id", imp.news_id}, {"clicked", imp.clicked}});
  }
  return {{"split", split},
          {"session_id", s.session_id},
          {"user_id", s.user_id},
          {"history", s.history},
          {"shown", std::move(shown)}};
}

template <typename Fn>
void ForEachJsonLine(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(std::string(what) + " line " + std::to_string(line_no) +
                       ": " + e.what());
    }
  }
}

std::ifstream OpenIn(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open '" + p.string() + "'");
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  return out;
}

}  // namespace

void WriteNewsJsonl(const NewsTable& news, std::ostream& out) {
  for (const auto& item : news) out << NewsToJson(item).dump() << '\n';
}

void WriteSessionsJsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& s : corpus.train_sessions) {
    out << SessionToJson(s, "train").dump() << '\n';
  }
  for (const auto& s : corpus.dev_sessions) {
    out << SessionToJson(s, "dev").dump() << '\n';
  }
}

NewsTable ReadNewsJsonl(std::istream& in) {
  NewsTable table;
  ForEachJsonLine(in, "news.jsonl", [&](const json& j) {
    NewsItem item;
    item.id = j.at("id").get<std::string>();
    item.title = j.at("title").get<std::string>();
    if (j.contains("category")) item.category = j["category"].get<std::string>();
    if (j.contains("abstract")) item.abstract = j["abstract"].get<std::string>();
    table.Add(std::move(item));
  });
  return table;
}

void ReadSessionsJsonl(std::istream& in, Corpus& corpus) {
  ForEachJsonLine(in, "sessions.jsonl", [&](const json& j) {
    Session s;
    s.session_id = j.at("session_id").get<std::string>();
    s.user_id = j.at("user_id").get<std::string>();
    s.history = j.at("history").get<std::vector<std::string>>();
    for (const auto& imp : j.at("shown")) {
      s.shown.push_back(
          {imp.at("id").get<std::string>(), imp.at("clicked").get<bool>()});
    }
    const auto split = j.at("split").get<std::string>();
    if (split == "train") {
      corpus.train_sessions.push_back(std::move(s));
    } else if (split == "dev") {
      corpus.dev_sessions.push_back(std::move(s));
    } else {
      throw ParseError("sessions.jsonl: unknown split '" + split + "'");
    }
  });
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto news = OpenOut(dir / "news.jsonl");
  WriteNewsJsonl(corpus.news, news);
  auto sessions = OpenOut(dir / "sessions.jsonl");
  WriteSessionsJsonl(corpus, sessions);
}

Corpus LoadCorpus(const std::filesystem::path& dir) {
  Corpus corpus;
  auto news = OpenIn(dir / "news.jsonl");
  corpus.news = ReadNewsJsonl(news);
  auto sessions = OpenIn(dir / "sessions.jsonl");
  ReadSessionsJsonl(sessions, corpus);
  corpus.Validate();
  return corpus;
}

}  // namespace newsrec
