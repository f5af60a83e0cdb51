#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "badgoods/arima.hpp"
#include "badgoods/baselines.hpp"
#include "badgoods/errors.hpp"
#include "badgoods/ingest.hpp"
#include "badgoods/risk.hpp"
#include "badgoods/stats.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace badgoods;

struct RunConfig {
    std::string input_path;
    std::string plan_path;
    std::string out_dir = ".";
    int horizon = 12;
    int max_p = 3;
    int max_d = 2;
    int max_q = 3;
    std::string gap_policy = "reject";
    std::string format = "csv";
    std::uint64_t seed = 0; // reserved for simulation utilities
};

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::ConfigError: return 2;
    case Errc::IoError: return 3;
    default: return 10 + static_cast<int>(code);
    }
}

std::string fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::IoError, "cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        fail(Errc::IoError, "write failed for " + path.string());
    }
}

GapPolicy parse_gap_policy(const std::string& name) {
    if (name == "reject") {
        return GapPolicy::Reject;
    }
    if (name == "interpolate") {
        return GapPolicy::Interpolate;
    }
    fail(Errc::ConfigError, "gap policy must be reject or interpolate, got \"" + name + "\"");
}

risk::TableFormat parse_format(const std::string& name) {
    if (name == "csv") {
        return risk::TableFormat::Csv;
    }
    if (name == "json") {
        return risk::TableFormat::Json;
    }
    fail(Errc::ConfigError, "format must be csv or json, got \"" + name + "\"");
}

Dataset load_history(const RunConfig& config) {
    if (config.input_path.empty()) {
        fail(Errc::ConfigError, "--input is required");
    }
    std::ifstream in(config.input_path, std::ios::binary);
    if (!in) {
        fail(Errc::IoError, "cannot read " + config.input_path);
    }
    std::string label = fs::path(config.input_path).stem().string();
    Dataset dataset = parse_history_csv(in, label);
    return validate(std::move(dataset), parse_gap_policy(config.gap_policy));
}

std::vector<PlanInput> load_plan(const RunConfig& config) {
    if (config.plan_path.empty()) {
        fail(Errc::ConfigError, "--plan is required for this subcommand");
    }
    std::ifstream in(config.plan_path, std::ios::binary);
    if (!in) {
        fail(Errc::IoError, "cannot read " + config.plan_path);
    }
    return parse_plan_csv(in);
}

fs::path ensure_out_dir(const RunConfig& config) {
    fs::path dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        fail(Errc::IoError, "cannot create output directory " + dir.string());
    }
    return dir;
}

const std::vector<HistoryField> kAllFields = {
    HistoryField::BoughtQty,
    HistoryField::ReturnQty,
    HistoryField::RetailerCapacity,
    HistoryField::RateOfReturn,
};

// ---- analyze ---------------------------------------------------------------

std::string acf_csv(const stats::AcfResult& r) {
    std::ostringstream out;
    out << "lag,coefficient,conf_lower,conf_upper\n";
    for (int k = 0; k <= r.max_lag; ++k) {
        out << k << ',' << fixed(r.coefficients[static_cast<std::size_t>(k)], 6) << ','
            << fixed(-r.confidence_half_width, 6) << ',' << fixed(r.confidence_half_width, 6)
            << '\n';
    }
    return out.str();
}

json acf_json(const stats::AcfResult& r) {
    json j;
    j["max_lag"] = r.max_lag;
    j["n"] = r.n;
    j["confidence_half_width"] = r.confidence_half_width;
    j["coefficients"] = r.coefficients;
    return j;
}

std::string histogram_csv(const stats::Histogram& h) {
    std::ostringstream out;
    out << "bin_start,bin_end,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        out << fixed(h.bin_edges[i], 6) << ',' << fixed(h.bin_edges[i + 1], 6) << ','
            << h.counts[i] << '\n';
    }
    return out.str();
}

json histogram_json(const stats::Histogram& h) {
    json j;
    j["bin_edges"] = h.bin_edges;
    j["counts"] = h.counts;
    return j;
}

std::string summary_csv(const std::vector<std::pair<std::string, stats::Summary>>& rows) {
    std::ostringstream out;
    out << "field,mean,std,min,max,n\n";
    for (const auto& [name, s] : rows) {
        out << name << ',' << fixed(s.mean, 6) << ',' << fixed(s.std, 6) << ','
            << fixed(s.min, 6) << ',' << fixed(s.max, 6) << ',' << s.n << '\n';
    }
    return out.str();
}

json summary_json(const std::vector<std::pair<std::string, stats::Summary>>& rows) {
    json array = json::array();
    for (const auto& [name, s] : rows) {
        array.push_back({{"field", name},
                         {"mean", s.mean},
                         {"std", s.std},
                         {"min", s.min},
                         {"max", s.max},
                         {"n", s.n}});
    }
    return array;
}

std::string correlation_csv(const stats::CorrelationMatrix& m) {
    std::ostringstream out;
    out << "variable";
    for (const auto& name : m.variable_names) {
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < m.variable_names.size(); ++i) {
        out << m.variable_names[i];
        for (std::size_t j = 0; j < m.variable_names.size(); ++j) {
            out << ',' << (m.defined(i, j) ? fixed(m.entries[i][j], 6) : std::string("NA"));
        }
        out << '\n';
    }
    return out.str();
}

json correlation_json(const stats::CorrelationMatrix& m) {
    json j;
    j["variables"] = m.variable_names;
    json entries = json::array();
    for (std::size_t i = 0; i < m.variable_names.size(); ++i) {
        json row = json::array();
        for (std::size_t j2 = 0; j2 < m.variable_names.size(); ++j2) {
            if (m.defined(i, j2)) {
                row.push_back(m.entries[i][j2]);
            } else {
                row.push_back(nullptr);
            }
        }
        entries.push_back(row);
    }
    j["entries"] = entries;
    return j;
}

int run_analyze(const RunConfig& config) {
    Dataset dataset = load_history(config);
    fs::path dir = ensure_out_dir(config);
    bool as_json = parse_format(config.format) == risk::TableFormat::Json;
    std::string ext = as_json ? ".json" : ".csv";

    std::vector<std::string> problems;
    auto attempt = [&](const std::string& label, auto&& work) {
        try {
            work();
        } catch (const Error& e) {
            problems.push_back(label + ": " + e.what());
        }
    };

    std::vector<std::pair<std::string, stats::Summary>> summaries;
    for (HistoryField field : kAllFields) {
        TimeSeries series = extract_series(dataset, field);
        summaries.emplace_back(series.field_name, stats::summarize(series));

        attempt(std::string("acf_") + series.field_name, [&] {
            auto result = stats::acf(series, stats::default_max_lag(series.size()));
            write_file(dir / ("acf_" + series.field_name + ext),
                       as_json ? acf_json(result).dump(2) + "\n" : acf_csv(result));
        });
        attempt(std::string("histogram_") + series.field_name, [&] {
            auto result = stats::histogram(series.values, 10);
            write_file(dir / ("histogram_" + series.field_name + ext),
                       as_json ? histogram_json(result).dump(2) + "\n" : histogram_csv(result));
        });
    }
    attempt("summary", [&] {
        write_file(dir / ("summary" + ext),
                   as_json ? summary_json(summaries).dump(2) + "\n" : summary_csv(summaries));
    });
    attempt("correlation_matrix", [&] {
        auto matrix = stats::correlation_matrix(dataset);
        write_file(dir / ("correlation_matrix" + ext),
                   as_json ? correlation_json(matrix).dump(2) + "\n" : correlation_csv(matrix));
    });

    if (!problems.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < problems.size(); ++i) {
            joined += (i ? "; " : "") + problems[i];
        }
        std::cerr << "error: partial output, " << problems.size()
                  << " artifact(s) failed: " << joined << "\n";
        return 20; // partial-output failure
    }
    return 0;
}

// ---- forecast --------------------------------------------------------------

std::string forecast_csv(const YearMonth& last_month, const arima::Forecast& f) {
    std::ostringstream out;
    out << "date,point,lower_95,upper_95\n";
    for (int h = 0; h < f.horizon; ++h) {
        out << last_month.plus_months(h + 1).to_string() << ','
            << fixed(f.point[static_cast<std::size_t>(h)], 6) << ','
            << fixed(f.lower_95[static_cast<std::size_t>(h)], 6) << ','
            << fixed(f.upper_95[static_cast<std::size_t>(h)], 6) << '\n';
    }
    return out.str();
}

json fit_json(const arima::ArimaFit& fit) {
    json j;
    j["order"] = {{"p", fit.order.p}, {"d", fit.order.d}, {"q", fit.order.q}};
    j["ar_coeffs"] = fit.ar_coeffs;
    j["ma_coeffs"] = fit.ma_coeffs;
    if (fit.has_intercept) {
        j["intercept"] = fit.intercept;
    }
    j["sigma2"] = fit.sigma2;
    j["aic"] = fit.aic;
    j["n_effective"] = fit.n_effective;
    return j;
}

int run_forecast(const RunConfig& config) {
    if (config.horizon < 1) {
        fail(Errc::ConfigError, "--horizon must be at least 1");
    }
    Dataset dataset = load_history(config);
    fs::path dir = ensure_out_dir(config);
    arima::OrderBounds bounds{config.max_p, config.max_d, config.max_q};

    json models;
    for (HistoryField field : kAllFields) {
        TimeSeries series = extract_series(dataset, field);
        auto order = arima::select_order(series, bounds);
        auto fitted = arima::fit(series, order);
        std::size_t tail = static_cast<std::size_t>(order.p + order.d);
        std::vector<double> last_levels(series.values.end() - static_cast<std::ptrdiff_t>(tail),
                                        series.values.end());
        auto predicted = arima::forecast(fitted, last_levels, config.horizon);
        write_file(dir / ("forecast_" + series.field_name + ".csv"),
                   forecast_csv(dataset.span_last(), predicted));
        models[series.field_name] = fit_json(fitted);
    }
    write_file(dir / "models.json", models.dump(2) + "\n");
    return 0;
}

// ---- score -----------------------------------------------------------------

risk::ScoringConfig scoring_config_for(const RunConfig& config,
                                       const std::vector<PlanInput>& plan) {
    risk::ScoringConfig scoring;
    scoring.horizon = static_cast<int>(plan.size());
    scoring.bounds = arima::OrderBounds{config.max_p, config.max_d, config.max_q};

    auto column_mode = [&](auto member, const char* name) {
        std::size_t present = 0;
        for (const auto& row : plan) {
            if (row.*member) {
                ++present;
            }
        }
        if (present == 0) {
            return risk::SourceMode::Forecast;
        }
        if (present == plan.size()) {
            return risk::SourceMode::PlanOverride;
        }
        fail(Errc::ConfigError, std::string(name) + " override must cover every plan month");
    };
    scoring.rate_source = column_mode(&PlanInput::return_rate, "return_rate_pct");
    scoring.capacity_source = column_mode(&PlanInput::retailer_capacity, "retailer_capacity");
    return scoring;
}

struct ScoreOutput {
    std::vector<RiskRow> rows;
    std::vector<risk::Recommendation> recommendations;
};

ScoreOutput compute_scores(const Dataset& dataset, const std::vector<PlanInput>& plan,
                           const risk::ScoringConfig& scoring) {
    ScoreOutput output;
    auto rows = risk::build_plan(dataset, plan, scoring);
    output.rows = risk::score_plan(rows, scoring.low_upper, scoring.high_lower);
    for (const auto& row : output.rows) {
        if (row.risk_level == RiskLevel::Low) {
            continue;
        }
        output.recommendations.push_back(
            risk::recommend(row, {}, scoring.low_upper, scoring.high_lower));
    }
    return output;
}

int run_score(const RunConfig& config) {
    Dataset dataset = load_history(config);
    auto plan = load_plan(config);
    auto scoring = scoring_config_for(config, plan);
    auto output = compute_scores(dataset, plan, scoring);

    fs::path dir = ensure_out_dir(config);
    risk::TableFormat format = parse_format(config.format);
    std::string ext = format == risk::TableFormat::Json ? ".json" : ".csv";
    write_file(dir / ("risk_table" + ext), risk::emit_risk_table(output.rows, format));
    write_file(dir / "recommendations.json",
               risk::emit_recommendations_json(output.recommendations));
    return 0;
}

// ---- backtest --------------------------------------------------------------

std::string backtest_csv(const std::vector<baselines::BacktestReport>& reports) {
    std::ostringstream out;
    out << "model,mae,rmse,mape,folds,horizon\n";
    for (const auto& r : reports) {
        out << r.model_name << ',' << fixed(r.mae, 6) << ',' << fixed(r.rmse, 6) << ','
            << fixed(r.mape, 6) << ',' << r.fold_count << ',' << r.horizon << '\n';
    }
    return out.str();
}

int run_backtest(const RunConfig& config) {
    if (config.horizon < 1) {
        fail(Errc::ConfigError, "--horizon must be at least 1");
    }
    Dataset dataset = load_history(config);
    fs::path dir = ensure_out_dir(config);

    for (HistoryField field : kAllFields) {
        TimeSeries series = extract_series(dataset, field);
        std::vector<baselines::BacktestReport> reports;
        for (auto kind : {baselines::ModelKind::Arima, baselines::ModelKind::Ses,
                          baselines::ModelKind::HoltWinters}) {
            reports.push_back(baselines::rolling_origin_backtest(series, kind, config.horizon));
        }
        write_file(dir / ("backtest_" + series.field_name + ".csv"), backtest_csv(reports));
    }
    return 0;
}

// ---- report ----------------------------------------------------------------

int run_report(const RunConfig& config) {
    int analyze_status = run_analyze(config);
    run_forecast(config);
    run_backtest(config);

    Dataset dataset = load_history(config);
    auto plan = load_plan(config);
    auto scoring = scoring_config_for(config, plan);
    auto output = compute_scores(dataset, plan, scoring);

    fs::path dir = ensure_out_dir(config);
    risk::TableFormat format = parse_format(config.format);
    std::string ext = format == risk::TableFormat::Json ? ".json" : ".csv";
    write_file(dir / ("risk_table" + ext), risk::emit_risk_table(output.rows, format));
    write_file(dir / "recommendations.json",
               risk::emit_recommendations_json(output.recommendations));

    std::size_t synthetic = 0;
    for (const auto& r : dataset.records) {
        synthetic += r.synthetic ? 1 : 0;
    }

    std::ostringstream text;
    text << "bad-goods risk report\n";
    text << "=====================\n\n";
    text << "product: " << (dataset.product_label.empty() ? "(unlabeled)" : dataset.product_label)
         << "\n";
    text << "history: " << dataset.span_first().to_string() << ".."
         << dataset.span_last().to_string() << " (" << dataset.size() << " months, " << synthetic
         << " synthetic)\n\n";

    text << "plan risk (" << output.rows.front().plan.month.to_string() << ".."
         << output.rows.back().plan.month.to_string() << ")\n";
    std::vector<std::string> high_months;
    for (const auto& row : output.rows) {
        text << "  " << row.plan.month.to_string() << "  score "
             << fixed(row.risk_score.value, 3) << "  " << to_string(row.risk_level) << "\n";
        if (row.risk_level == RiskLevel::High) {
            high_months.push_back(row.plan.month.to_string());
        }
    }
    text << "\nhigh-risk months:";
    if (high_months.empty()) {
        text << " none";
    } else {
        for (std::size_t i = 0; i < high_months.size(); ++i) {
            text << (i ? ", " : " ") << high_months[i];
        }
    }
    text << "\n\nrecommendations\n";
    if (output.recommendations.empty()) {
        text << "  none needed\n";
    }
    for (const auto& rec : output.recommendations) {
        text << "  " << rec.month.to_string() << ": ";
        if (!rec.feasible) {
            text << "no feasible action within bounds (target " << to_string(rec.target_level)
                 << ")\n";
            continue;
        }
        for (std::size_t i = 0; i < rec.actions.size(); ++i) {
            if (i) {
                text << " + ";
            }
            text << to_string(rec.actions[i].type) << " to " << rec.actions[i].to;
        }
        text << " -> score " << fixed(rec.resulting_score.value, 3) << " (target "
             << to_string(rec.target_level) << ")\n";
    }
    write_file(dir / "report.txt", text.str());
    return analyze_status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bad-goods risk scoring and forecasting for monthly product histories"};
    app.require_subcommand(1);

    RunConfig config;
    auto add_common = [&](CLI::App* sub, bool needs_plan) {
        sub->add_option("--input", config.input_path, "history CSV path")->required();
        if (needs_plan) {
            sub->add_option("--plan", config.plan_path, "plan CSV path")->required();
        }
        sub->add_option("--out", config.out_dir, "output directory (default .)");
        sub->add_option("--horizon", config.horizon, "forecast horizon in months (default 12)");
        sub->add_option("--max-p", config.max_p, "AR order bound (default 3)");
        sub->add_option("--max-d", config.max_d, "differencing bound (default 2)");
        sub->add_option("--max-q", config.max_q, "MA order bound (default 3)");
        sub->add_option("--gap-policy", config.gap_policy, "reject|interpolate (default reject)");
        sub->add_option("--format", config.format, "csv|json (default csv)");
        sub->add_option("--seed", config.seed, "seed for simulation utilities");
    };

    auto* analyze = app.add_subcommand("analyze", "descriptive statistics of a history");
    add_common(analyze, false);
    auto* forecast = app.add_subcommand("forecast", "per-field model fits and forecasts");
    add_common(forecast, false);
    auto* score = app.add_subcommand("score", "risk-score a forward plan");
    add_common(score, true);
    auto* backtest = app.add_subcommand("backtest", "rolling-origin model comparison");
    add_common(backtest, false);
    auto* report = app.add_subcommand("report", "full analysis, forecasts, scores, summary");
    add_common(report, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << "error: ConfigError: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) {
            return run_analyze(config);
        }
        if (forecast->parsed()) {
            return run_forecast(config);
        }
        if (score->parsed()) {
            return run_score(config);
        }
        if (backtest->parsed()) {
            return run_backtest(config);
        }
        if (report->parsed()) {
            return run_report(config);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
