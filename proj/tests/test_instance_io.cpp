#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "lpbal/errors.hpp"
#include "lpbal/instance_gen.hpp"
#include "lpbal/instance_io.hpp"

using namespace lpbal;

TEST(InstanceIo, RoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = gen_random(5, 3, 20, seed);
    EXPECT_EQ(instance_from_string(instance_to_string(inst)), inst);
  }
  const Instance ex = gen_example1(4, 0.3);
  EXPECT_EQ(instance_from_string(instance_to_string(ex)), ex);
  const Instance w = gen_walsh_instance(4, 3);
  EXPECT_EQ(instance_from_string(instance_to_string(w)), w);
}

TEST(InstanceIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "lpbal_io_roundtrip.json";
  const Instance inst = gen_random(3, 2, 4, 77);
  write_instance(path, inst);
  EXPECT_EQ(read_instance(path), inst);
  std::filesystem::remove(path);
}

TEST(InstanceIo, SyntaxErrorReportsPosition) {
  try {
    instance_from_string("{\n  \"m\": 2,\n  \"jobs\": [ oops ]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(InstanceIo, MissingFieldIsParseError) {
  EXPECT_THROW(instance_from_string(R"({"jobs": []})"), ParseError);
  EXPECT_THROW(instance_from_string(R"([1, 2])"), ParseError);
  EXPECT_THROW(instance_from_string(R"({"m": 2, "jobs": [[[0.5]]]})"), ParseError);
}

TEST(InstanceIo, EntryOutOfRange) {
  EXPECT_THROW(instance_from_string(R"({"m": 1, "jobs": [[[1.5]]]})"), RangeError);
  EXPECT_THROW(instance_from_string(R"({"m": 1, "jobs": [[[-0.1]]]})"), RangeError);
}

TEST(InstanceIo, UnwritablePath) {
  EXPECT_THROW(write_instance(std::filesystem::path("/nonexistent_dir/x.json"), gen_example1(2, 0.5)),
               IoError);
  EXPECT_THROW(read_instance(std::filesystem::path("/nonexistent_dir/x.json")), IoError);
}

TEST(InstanceIo, EmptyJobList) {
  const Instance inst = instance_from_string(R"({"m": 3, "jobs": []})");
  EXPECT_EQ(inst.m, 3u);
  EXPECT_EQ(inst.n(), 0u);
}
