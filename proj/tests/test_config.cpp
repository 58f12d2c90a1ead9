#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qpac/config.hpp"
#include "qpac/errors.hpp"

using namespace qpac;
using nlohmann::json;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Config, CommandDefaults) {
  const auto learn = default_config(Command::Learn);
  EXPECT_EQ(learn.n, 4u);
  EXPECT_EQ(learn.m, 15u);
  EXPECT_DOUBLE_EQ(learn.params.gamma, 0.1);
  EXPECT_EQ(learn.params.k_max, 300u);

  const auto sweep = default_config(Command::SweepM);
  EXPECT_EQ(sweep.repeats, 20u);
  EXPECT_EQ(sweep.params.replacement, Replacement::Without);

  const auto errors = default_config(Command::SweepErrors);
  EXPECT_DOUBLE_EQ(errors.params.epsilon, 0.05);
  EXPECT_DOUBLE_EQ(errors.params.gamma, 0.1);
  EXPECT_DOUBLE_EQ(errors.params.delta, 0.1);

  const auto scaling = default_config(Command::Scaling);
  EXPECT_EQ(scaling.dist, DistributionLabel::DII);
  EXPECT_EQ(scaling.n_min, 2u);
  EXPECT_EQ(scaling.n_max, 6u);
  EXPECT_DOUBLE_EQ(scaling.params.epsilon, 0.15);
  EXPECT_DOUBLE_EQ(scaling.params.gamma, 0.2);
  EXPECT_DOUBLE_EQ(scaling.params.delta, 0.2);
  EXPECT_EQ(scaling.params.i_max, 50u);

  EXPECT_EQ(default_config(Command::BoundCurve).n_max, 10u);
}

TEST(Config, CommandNames) {
  for (Command c : {Command::Learn, Command::SweepM, Command::SweepErrors, Command::Scaling,
                    Command::BoundCurve})
    EXPECT_EQ(parse_command(to_string(c)), c);
  EXPECT_THROW(parse_command("fit"), ConfigError);
}

TEST(Config, OverlayAndRoundTrip) {
  auto cfg = apply_json(default_config(Command::Scaling),
                        json{{"gamma", 0.3}, {"shots", 100}, {"n_max", 5}, {"seed", 7}});
  EXPECT_DOUBLE_EQ(cfg.params.gamma, 0.3);
  EXPECT_EQ(cfg.params.noise, NoiseModel::with_shots(100));
  EXPECT_EQ(cfg.n_max, 5u);
  EXPECT_EQ(cfg.seed, 7u);
  const auto again = apply_json(default_config(Command::Learn), to_json(cfg));
  EXPECT_EQ(to_json(again), to_json(cfg));
  EXPECT_EQ(again.command, Command::Scaling);

  // execution settings are not part of the echo
  EXPECT_FALSE(to_json(cfg).contains("threads"));
  EXPECT_FALSE(to_json(cfg).contains("out"));
}

TEST(Config, NoiseKeys) {
  const auto g = apply_json(default_config(Command::Learn), json{{"gauss_std", 0.05}});
  EXPECT_EQ(g.params.noise, NoiseModel::gaussian(0.05));
  const auto back = apply_json(g, json{{"gauss_std", 0.0}});
  EXPECT_EQ(back.params.noise, NoiseModel::exact());
  EXPECT_NE(message_of([] {
              apply_json(default_config(Command::Learn), json{{"shots", 10}, {"gauss_std", 0.1}});
            }).find("exclusive"),
            std::string::npos);
}

TEST(Config, ErrorsNameKeyAndLine) {
  const std::string text = "{\n  \"gamma\": 0.2,\n  \"gamam\": 0.3\n}\n";
  const auto msg = message_of(
      [&] { apply_json(default_config(Command::Learn), json::parse(text), "run.json", text); });
  EXPECT_EQ(msg, "run.json:3: gamam: unknown key");

  const std::string typed = "{\n  \"imax\": \"many\"\n}";
  const auto msg2 = message_of(
      [&] { apply_json(default_config(Command::Learn), json::parse(typed), "t.json", typed); });
  EXPECT_EQ(msg2.rfind("t.json:2: imax: ", 0), 0u) << msg2;

  EXPECT_NE(message_of([] { apply_json(default_config(Command::Learn), json{{"dist", "d3"}}); })
                .find("dist"),
            std::string::npos);
  EXPECT_THROW(apply_json(default_config(Command::Learn), json::array()), ConfigError);
}

TEST(Config, SweepParamResetsValues) {
  auto cfg = apply_json(default_config(Command::SweepErrors),
                        json{{"sweep_param", "gamma"}, {"sweep_values", {0.1, 0.2}}});
  EXPECT_EQ(cfg.sweep_values.size(), 2u);
  cfg = apply_json(cfg, json{{"sweep_param", "delta"}});
  EXPECT_TRUE(cfg.sweep_values.empty());
}

TEST(Config, Validation) {
  auto cfg = default_config(Command::Learn);
  EXPECT_NO_THROW(validate(cfg));
  cfg.m = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::Learn);
  cfg.params.gamma = 1.5;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::Learn);
  cfg.n = 1;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::SweepErrors);
  cfg.sweep_param = "kmax";
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::SweepErrors);
  cfg.sweep_values = {0.1, 1.0};
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::Scaling);
  cfg.n_min = 5;
  cfg.n_max = 3;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::Scaling);
  cfg.params.delta = 0.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::BoundCurve);
  cfg.k_constant = -1;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = default_config(Command::Learn);
  cfg.threads = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(Config, LoadDocuments) {
  const auto json_path = write_temp("qpac_cfg.json", "{\"gamma\": 0.25}\n");
  EXPECT_DOUBLE_EQ(load_config_document(json_path).first.at("gamma").get<double>(), 0.25);

  const auto csv_path = write_temp(
      "qpac_prev.csv", "# {\"config\":{\"command\":\"learn\",\"gamma\":0.3},\"tool\":\"qpac\"}\na,b\n1,2\n");
  EXPECT_DOUBLE_EQ(load_config_document(csv_path).first.at("gamma").get<double>(), 0.3);

  const auto bad = write_temp("qpac_bad.json", "{\"gamma\": }");
  EXPECT_THROW(load_config_document(bad), ConfigError);
  const auto nohdr = write_temp("qpac_nohdr.csv", "# {\"tool\":\"qpac\"}\n");
  EXPECT_THROW(load_config_document(nohdr), ConfigError);
  EXPECT_THROW(load_config_document("/nonexistent/qpac.json"), ConfigError);
}
