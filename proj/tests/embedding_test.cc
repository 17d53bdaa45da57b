//
// Copyright 2026 The Sympel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sympel/embedding.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sympel/embed_client.h"
#include "sympel/error.h"
#include "sympel/kb.h"
#include "test_util.h"

namespace sympel {
namespace {

double Norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

EmbeddingStore SmallStore() {
  StubEmbedder stub(16);
  const std::vector<std::string> texts = {"dolor", "fiebre", "tos seca"};
  std::vector<float> data;
  for (const auto& v : stub.Embed(texts)) {
    for (double x : v) data.push_back(static_cast<float>(x));
  }
  return EmbeddingStore(16, stub.id(), data);
}

TEST(StubEmbedder, UnitNormDeterministicCaseInsensitive) {
  StubEmbedder stub(64);
  EXPECT_EQ(stub.id(), "stub-trigram-64");
  const std::vector<std::string> texts = {"Dolor torácico", "dolor  TORÁCICO",
                                          "fiebre", "x"};
  const auto v = stub.Embed(texts);
  ASSERT_EQ(v.size(), 4u);
  for (const auto& row : v) {
    EXPECT_EQ(row.size(), 64u);
    EXPECT_NEAR(Norm(row), 1.0, 1e-12);
  }
  EXPECT_EQ(v[0], v[1]);
  EXPECT_NE(v[0], v[2]);
  EXPECT_EQ(stub.Embed(texts), v);
  const std::vector<std::string> blank = {"  "};
  EXPECT_THROW(stub.Embed(blank), Error);
  EXPECT_THROW(StubEmbedder(8), Error);
}

TEST(EmbeddingStore, ValidatesRows) {
  EXPECT_THROW(EmbeddingStore(2, "x", {1.0f, 0.0f, 0.5f, 0.5f}), Error);
  EXPECT_THROW(EmbeddingStore(2, "x", {1.0f, 0.0f, 1.0f}), Error);
  const EmbeddingStore s(2, "x", {1.0f, 0.0f, 0.6f, 0.8f});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_NEAR(s.row_norm(1), 1.0, 1e-6);
}

TEST(EmbeddingFile, BinaryRoundTrip) {
  const EmbeddingStore store = SmallStore();
  const std::string bytes = SerializeEmbeddings(store);
  EXPECT_EQ(bytes.substr(0, 4), "EMB1");
  EXPECT_EQ(bytes.size(), 12u + 3u * (4u + 16u * 4u));
  const EmbeddingStore back = DeserializeEmbeddings(bytes, "mem");
  EXPECT_EQ(back.data(), store.data());
  EXPECT_EQ(back.provider_id(), "mem");

  testing::TempDir dir;
  SaveEmbeddings(store, dir / "e.bin");
  const EmbeddingStore loaded = LoadEmbeddings(dir / "e.bin");
  EXPECT_EQ(loaded.data(), store.data());
  EXPECT_EQ(loaded.provider_id(), "file:" + (dir / "e.bin").string());

  std::string repeated = bytes;
  // Point the second record at index 0.
  repeated[12 + 68] = 0;
  EXPECT_THROW(DeserializeEmbeddings(repeated, "mem"), Error);
  EXPECT_THROW(DeserializeEmbeddings(bytes.substr(0, bytes.size() - 1), "m"),
               Error);
  EXPECT_THROW(DeserializeEmbeddings("EMBX" + bytes.substr(4), "m"), Error);
}

TEST(EmbeddingFile, RecordsMayArriveOutOfOrder) {
  const EmbeddingStore store = SmallStore();
  const std::string bytes = SerializeEmbeddings(store);
  const size_t rec = 4 + 16 * 4;
  const std::string swapped = bytes.substr(0, 12) + bytes.substr(12 + 2 * rec) +
                              bytes.substr(12 + rec, rec) +
                              bytes.substr(12, rec);
  EXPECT_EQ(DeserializeEmbeddings(swapped, "m").data(), store.data());
}

TEST(EmbeddingFile, DebugTsvRoundTrip) {
  const EmbeddingStore store = SmallStore();
  std::ostringstream out;
  WriteEmbeddingsDebug(out, store);
  EXPECT_EQ(out.str().rfind("#dim=16\tprovider=stub-trigram-16\n", 0), 0u);
  std::istringstream in(out.str());
  const EmbeddingStore back = ReadEmbeddingsDebug(in, "dbg");
  EXPECT_EQ(back.data(), store.data());
  EXPECT_EQ(back.provider_id(), store.provider_id());
}

TEST(EmbedKnowledgeBase, AlignedWithRecords) {
  const std::vector<AliasRecord> records = {
      {"fiebre", "1", AliasSource::kGazetteer},
      {"dolor", "2", AliasSource::kGazetteer}};
  const KnowledgeBase kb = BuildFromRecords(records);
  StubEmbedder stub(32);
  const EmbeddingStore store = EmbedKnowledgeBase(kb, stub, 1);
  ASSERT_EQ(store.size(), 2u);
  const std::vector<std::string> first = {kb.records()[0].surface};
  const auto expected = stub.Embed(first)[0];
  for (size_t d = 0; d < 32; ++d) {
    EXPECT_EQ(store.row(0)[d], static_cast<float>(expected[d]));
  }
  EXPECT_THROW(EmbedKnowledgeBase(KnowledgeBase{}, stub), Error);
}

// Minimal /embed server backed by the stub embedder, with knobs for faults.
class FakeService {
 public:
  FakeService() {
    server_.Post("/v1/embed", [this](const httplib::Request& req,
                                     httplib::Response& res) {
      ++requests_;
      if (failures_left_ > 0) {
        --failures_left_;
        res.status = 503;
        return;
      }
      if (reject_) {
        res.status = 400;
        res.set_content("bad request", "text/plain");
        return;
      }
      const auto body = nlohmann::json::parse(req.body);
      const auto texts = body["texts"].get<std::vector<std::string>>();
      max_batch_ = std::max(max_batch_.load(), texts.size());
      StubEmbedder stub(16);
      auto vectors = stub.Embed(texts);
      for (auto& v : vectors) {
        for (double& x : v) x *= 3.0;  // client must renormalize
      }
      if (drop_one_ && !vectors.empty()) vectors.pop_back();
      nlohmann::json reply;
      reply["dim"] = advertised_dim_;
      reply["vectors"] = vectors;
      res.set_content(malformed_ ? "{\"dim\": \"x\"}" : reply.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  ServiceConfig Config() const {
    ServiceConfig cfg;
    cfg.url = "http://127.0.0.1:" + std::to_string(port_) + "/v1/";
    cfg.retry_delay_ms = 1;
    cfg.timeout_seconds = 5;
    return cfg;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<int> failures_left_{0};
  std::atomic<size_t> max_batch_{0};
  bool reject_ = false;
  bool drop_one_ = false;
  bool malformed_ = false;
  size_t advertised_dim_ = 16;
};

TEST(ServiceEmbedder, MatchesStubAndBatches) {
  FakeService service;
  ServiceConfig cfg = service.Config();
  cfg.batch_size = 2;
  ServiceEmbedder client(cfg);
  const std::vector<std::string> texts = {"dolor", "fiebre", "tos", "mareo",
                                          "dolor"};
  const auto got = client.Embed(texts);
  StubEmbedder stub(16);
  const auto want = stub.Embed(texts);
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    for (size_t d = 0; d < 16; ++d) EXPECT_NEAR(got[i][d], want[i][d], 1e-12);
  }
  EXPECT_EQ(got[0], got[4]);
  EXPECT_EQ(service.requests_.load(), 3);
  EXPECT_EQ(service.max_batch_.load(), 2u);
  EXPECT_EQ(client.dim(), 16u);
}

TEST(ServiceEmbedder, RetriesServerErrors) {
  FakeService service;
  service.failures_left_ = 2;
  ServiceEmbedder client(service.Config());
  const std::vector<std::string> texts = {"dolor"};
  EXPECT_EQ(client.Embed(texts).size(), 1u);
  EXPECT_EQ(service.requests_.load(), 3);

  service.failures_left_ = 5;
  try {
    client.Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmbedderError);
  }
}

TEST(ServiceEmbedder, RejectsBadReplies) {
  FakeService service;
  const std::vector<std::string> texts = {"dolor", "tos"};
  service.reject_ = true;
  EXPECT_THROW(ServiceEmbedder(service.Config()).Embed(texts), Error);
  EXPECT_EQ(service.requests_.load(), 1);  // no retry on 4xx
  service.reject_ = false;

  service.drop_one_ = true;
  EXPECT_THROW(ServiceEmbedder(service.Config()).Embed(texts), Error);
  service.drop_one_ = false;

  ServiceConfig expect32 = service.Config();
  expect32.expected_dim = 32;
  try {
    ServiceEmbedder(expect32).Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }

  service.advertised_dim_ = 8;
  EXPECT_THROW(ServiceEmbedder(service.Config()).Embed(texts), Error);
  service.advertised_dim_ = 16;

  service.malformed_ = true;
  try {
    ServiceEmbedder(service.Config()).Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmbedderError);
  }
}

TEST(ServiceEmbedder, UnreachableAndBadUrl) {
  ServiceConfig cfg;
  cfg.url = "http://127.0.0.1:1";
  cfg.max_attempts = 2;
  cfg.retry_delay_ms = 1;
  cfg.timeout_seconds = 1;
  const std::vector<std::string> texts = {"dolor"};
  EXPECT_THROW(ServiceEmbedder(cfg).Embed(texts), Error);
  cfg.url = "ftp://example";
  EXPECT_THROW(ServiceEmbedder{cfg}, Error);
}

TEST(ServiceEmbedder, UrlFromEnvironment) {
  setenv(kEmbedUrlEnv, "http://localhost:9999", 1);
  EXPECT_EQ(EmbedServiceUrlFromEnv(), "http://localhost:9999");
  unsetenv(kEmbedUrlEnv);
  EXPECT_EQ(EmbedServiceUrlFromEnv(), "");
}

}  // namespace
}  // namespace sympel
