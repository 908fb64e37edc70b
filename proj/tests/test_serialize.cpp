#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stableseq/serialize.hpp"

using namespace stableseq;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("stableseq-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST(Json, Sequence) {
  Json j = to_json(count_by_size(hypercube(3)), "qd:3");
  EXPECT_EQ(j["graph"], "qd:3");
  EXPECT_EQ(j["alpha"], 4);
  EXPECT_EQ(j["total"], "35");
  EXPECT_EQ(j["counts"], Json::array({"1", "8", "16", "8", "2"}));
}

TEST(Json, Verdicts) {
  IndSetSequence aems{{1, 49, 48, 64}};
  Json u = to_json(check_unimodal(aems));
  EXPECT_EQ(u["verdict"], "not unimodal");
  EXPECT_EQ(u["witness"], Json::array({1, 2}));
  Json f = to_json(check_final_third(IndSetSequence{{1, 8, 16, 8, 2}}));
  EXPECT_EQ(f["holds"], true);
  EXPECT_TRUE(f["witness"].is_null());
}

TEST(Json, CubeEstimateHasEveryField) {
  Json j = to_json(cube_window(64, pow2(62)));
  for (const char *key : {"d", "t", "range", "lambda", "f_cut", "central_log2", "e1_log2", "e2_log2"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["lambda"], "1");
  EXPECT_EQ(j["range"], "range123");
  Json small = to_json(cube_window(5, 8));
  EXPECT_TRUE(small["e1_log2"].is_null());
  EXPECT_TRUE(small.contains("e1_note"));
}

TEST(Csv, Sequence) {
  std::ostringstream o;
  write_csv(o, count_by_size(hypercube(2)));
  EXPECT_EQ(o.str(), "t,count\n0,1\n1,4\n2,2\n");
}

TEST(Csv, BoundTableHeader) {
  std::ostringstream o;
  auto seq = count_by_size(hypercube(3));
  write_csv(o, regular_bound_table(8, 3, &seq));
  std::string first = o.str().substr(0, o.str().find('\n'));
  EXPECT_EQ(first, "t,lower_log2_lo,lower_log2_hi,upper_log2_lo,upper_log2_hi,exact,tags");
}

TEST(ProfileCache, RoundTrip) {
  auto dir = scratch_dir("roundtrip");
  auto p = small_set_profile(4, SmallPredicate::SmallTwoLinked);
  auto file = profile_cache_path(dir, 4, SmallPredicate::SmallTwoLinked);
  store_profile(file, p);
  auto back = load_profile(file, 4, SmallPredicate::SmallTwoLinked);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, p);
  EXPECT_FALSE(load_profile(file, 4, SmallPredicate::Small));
  EXPECT_FALSE(load_profile(file, 3, SmallPredicate::SmallTwoLinked));
  fs::remove_all(dir);
}

TEST(ProfileCache, RejectsTamperedFile) {
  auto dir = scratch_dir("tamper");
  auto p = small_set_profile(3, SmallPredicate::Small);
  auto file = profile_cache_path(dir, 3, SmallPredicate::Small);
  store_profile(file, p);
  Json j;
  {
    std::ifstream in(file);
    j = Json::parse(in);
  }
  j["table"][1][3] = "999";
  std::ofstream(file) << j.dump();
  EXPECT_FALSE(load_profile(file, 3, SmallPredicate::Small));
  std::ofstream(file) << "not json";
  EXPECT_FALSE(load_profile(file, 3, SmallPredicate::Small));
  fs::remove_all(dir);
}

TEST(ProfileCache, EnvironmentDirectory) {
  auto dir = scratch_dir("env");
  ::setenv("STABLESEQ_CACHE_DIR", dir.c_str(), 1);
  auto first = cached_small_set_profile(4, SmallPredicate::Small);
  EXPECT_TRUE(fs::exists(profile_cache_path(dir, 4, SmallPredicate::Small)));
  auto second = cached_small_set_profile(4, SmallPredicate::Small);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first, small_set_profile(4, SmallPredicate::Small));
  ::unsetenv("STABLESEQ_CACHE_DIR");
  fs::remove_all(dir);
}

TEST(Hash, Fnv1a) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(255), "00000000000000ff");
}
