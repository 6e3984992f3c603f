#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "framesync/harness.hpp"

using namespace framesync;

namespace
{

constexpr int exit_config = 1;
constexpr int exit_io     = 2;

int print_complexity(int base, int bursts, std::uint64_t seed)
{
	const FrameModel model = FrameModel::wimax(50, 200);
	std::cout << "burst_bytes,trellis_closed_form,trellis_approx,trellis_counted,st_measured,gain\n";
	for (int L : {1800, 8000, 16000, 24000})
	{
		const auto r = complexity_row(L, model, base, bursts, seed);
		std::cout << L << ',' << std::fixed << std::setprecision(0) << r.trellis_closed_form << ','
		          << r.trellis_approx << ',' << r.trellis_counted << ',' << r.st_measured << ','
		          << std::setprecision(2) << r.gain() << '\n';
		std::cout.unsetf(std::ios::floatfield);
	}
	return 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Soft-decision frame synchronisation of aggregated bursts"};
	app.require_subcommand(1);

	ExperimentConfig config;
	std::string      snr = "0:12:2", methods = "trellis,st,mu,hard", channel = "rayleigh", config_file,
	            mu_policy = "uncorrectable";

	auto *sim = app.add_subcommand("simulate", "Monte-Carlo EFLR sweep, CSV output");
	sim->add_option("--config", config_file, "key = value file; flags given on the command line override it");
	sim->add_option("--burst-bytes", config.burst_len, "burst length L in bytes");
	sim->add_option("--lmin", config.min_len, "shortest frame in bytes");
	sim->add_option("--lmax", config.max_len, "longest frame in bytes");
	sim->add_option("--snr", snr, "SNR grid MIN:MAX:STEP in dB");
	sim->add_option("--channel", channel, "awgn or rayleigh")->check(CLI::IsMember({"awgn", "rayleigh"}));
	sim->add_option("--methods", methods, "comma-separated subset of trellis,st,mu,hard");
	sim->add_option("--window-bytes", config.window_len, "sliding-trellis base window length");
	sim->add_option("--first-window-bytes", config.first_window, "sliding-trellis first window length");
	sim->add_option("--bursts", config.bursts, "bursts per SNR point");
	sim->add_option("--seed", config.seed, "random seed");
	sim->add_option("--sigma2", config.sigma2_override, "noise variance, overrides the SNR");
	sim->add_flag("--include-padding", config.include_padding, "count the padding frame in the EFLR");
	sim->add_option("--mu-policy", mu_policy, "uncorrectable or validate")
	    ->check(CLI::IsMember({"uncorrectable", "validate"}));
	sim->add_option("--out", config.out, "CSV output path (stdout when omitted)");

	auto *tables = app.add_subcommand("tables", "Complexity tables");
	bool  complexity = false;
	int   base = 480, table_bursts = 20;
	std::uint64_t table_seed = 1;
	tables->add_flag("--complexity", complexity, "node counts of the full and sliding trellis")->required();
	tables->add_option("--window-bytes", base, "sliding-trellis base window length");
	tables->add_option("--bursts", table_bursts, "instrumented bursts per burst length");
	tables->add_option("--seed", table_seed, "random seed");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		const int rc = app.exit(e);
		return rc == 0 ? 0 : exit_config;
	}

	try
	{
		if (*tables)
			return print_complexity(base, table_bursts, table_seed);

		if (!config_file.empty())
		{
			std::ifstream is(config_file);
			if (!is)
				throw IoError("cannot read config file '" + config_file + "'");
			ExperimentConfig from_file;
			apply_config(is, from_file);
			// Re-apply the flags that were given explicitly.
			const ExperimentConfig flags = config;
			config                       = from_file;
			auto given = [&](const char *name) { return sim->count(name) > 0; };
			if (given("--burst-bytes")) config.burst_len = flags.burst_len;
			if (given("--lmin")) config.min_len = flags.min_len;
			if (given("--lmax")) config.max_len = flags.max_len;
			if (given("--window-bytes")) config.window_len = flags.window_len;
			if (given("--first-window-bytes")) config.first_window = flags.first_window;
			if (given("--bursts")) config.bursts = flags.bursts;
			if (given("--seed")) config.seed = flags.seed;
			if (given("--sigma2")) config.sigma2_override = flags.sigma2_override;
			if (given("--include-padding")) config.include_padding = true;
			if (given("--out")) config.out = flags.out;
			if (given("--snr")) config.snr = parse_snr_grid(snr);
			if (given("--channel")) config.channel = channel == "awgn" ? ChannelKind::awgn : ChannelKind::rayleigh;
			if (given("--methods")) config.methods = parse_methods(methods);
			if (given("--mu-policy"))
				config.mu.policy = mu_policy == "validate" ? AmbiguityPolicy::validate_candidates
				                                           : AmbiguityPolicy::uncorrectable;
		}
		else
		{
			config.snr     = parse_snr_grid(snr);
			config.channel = channel == "awgn" ? ChannelKind::awgn : ChannelKind::rayleigh;
			config.methods = parse_methods(methods);
			config.mu.policy =
			    mu_policy == "validate" ? AmbiguityPolicy::validate_candidates : AmbiguityPolicy::uncorrectable;
		}

		config.validate();
		if (!config.out.empty())
		{
			// Fail on an unwritable path before spending time on the sweep.
			std::ofstream probe(config.out);
			if (!probe)
				throw IoError("cannot open '" + config.out + "' for writing");
		}
		const auto table = run_sweep(config, &std::cerr);
		if (config.out.empty())
			emit_results(table, std::cout);
		else
			emit_results(table, config.out);
		return 0;
	}
	catch (const ConfigError &e)
	{
		std::cerr << "config error: " << e.what() << '\n';
		return exit_config;
	}
	catch (const IoError &e)
	{
		std::cerr << "i/o error: " << e.what() << '\n';
		return exit_io;
	}
}
