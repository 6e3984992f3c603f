#include "framesync/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace framesync
{

namespace
{

std::string trim(const std::string &s)
{
	const auto b = s.find_first_not_of(" \t\r");
	if (b == std::string::npos)
		return {};
	const auto e = s.find_last_not_of(" \t\r");
	return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
	std::vector<std::string> out;
	std::stringstream        ss(s);
	std::string              item;
	while (std::getline(ss, item, sep))
		out.push_back(trim(item));
	return out;
}

double to_double(const std::string &s, const std::string &what)
{
	try
	{
		std::size_t used = 0;
		const double v   = std::stod(s, &used);
		if (used != s.size())
			throw std::invalid_argument(s);
		return v;
	}
	catch (const std::exception &)
	{
		throw ConfigError("bad number for " + what + ": '" + s + "'");
	}
}

long long to_int(const std::string &s, const std::string &what)
{
	try
	{
		std::size_t     used = 0;
		const long long v    = std::stoll(s, &used);
		if (used != s.size())
			throw std::invalid_argument(s);
		return v;
	}
	catch (const std::exception &)
	{
		throw ConfigError("bad integer for " + what + ": '" + s + "'");
	}
}

bool to_bool(const std::string &s, const std::string &what)
{
	if (s == "1" || s == "true" || s == "yes")
		return true;
	if (s == "0" || s == "false" || s == "no")
		return false;
	throw ConfigError("bad flag for " + what + ": '" + s + "'");
}

} // namespace

std::string to_string(Method m)
{
	switch (m)
	{
	case Method::trellis: return "trellis";
	case Method::st: return "st";
	case Method::mu: return "mu";
	case Method::hard: return "hard";
	}
	return "?";
}

Method parse_method(const std::string &name)
{
	for (Method m : {Method::trellis, Method::st, Method::mu, Method::hard})
		if (to_string(m) == name)
			return m;
	throw ConfigError("unknown method '" + name + "' (expected trellis, st, mu or hard)");
}

std::vector<Method> parse_methods(const std::string &list)
{
	std::vector<Method> out;
	for (const auto &name : split(list, ','))
	{
		if (name.empty())
			continue;
		const Method m = parse_method(name);
		if (std::find(out.begin(), out.end(), m) == out.end())
			out.push_back(m);
	}
	if (out.empty())
		throw ConfigError("empty method list");
	return out;
}

std::vector<double> SnrGrid::points() const
{
	std::vector<double> out;
	if (!(step > 0.0) || max < min)
		return out;
	const auto n = static_cast<int>(std::floor((max - min) / step + 1e-9));
	for (int i = 0; i <= n; ++i)
		out.push_back(min + i * step);
	return out;
}

SnrGrid parse_snr_grid(const std::string &text)
{
	const auto parts = split(text, ':');
	if (parts.size() == 1)
	{
		const double v = to_double(parts[0], "snr");
		return {v, v, 1.0};
	}
	if (parts.size() != 3)
		throw ConfigError("snr grid must be MIN:MAX:STEP, got '" + text + "'");
	return {to_double(parts[0], "snr"), to_double(parts[1], "snr"), to_double(parts[2], "snr")};
}

FrameModel ExperimentConfig::model() const
{
	return FrameModel{HeaderSpec::wimax(), LengthDistribution::uniform(min_len, max_len, 8)};
}

void ExperimentConfig::validate() const
{
	if (min_len < 1 || max_len < min_len)
		throw ConfigError("length bounds must satisfy 1 <= lmin <= lmax");
	if (min_len < 6)
		throw ConfigError("lmin must cover the 6-byte header");
	if (max_len >= 2048)
		throw ConfigError("lmax must fit the 11-bit length field");
	if (burst_len < 1)
		throw ConfigError("burst length must be positive");
	if (snr.points().empty())
		throw ConfigError("snr grid is empty");
	if (bursts < 1)
		throw ConfigError("bursts must be at least 1");
	if (methods.empty())
		throw ConfigError("no method selected");
	if (mu.presync_confirmations < 0)
		throw ConfigError("presync confirmations must be non-negative");
	if (sigma2_override && !(*sigma2_override > 0.0))
		throw ConfigError("sigma2 override must be positive");
	if (std::find(methods.begin(), methods.end(), Method::st) != methods.end())
	{
		try
		{
			const auto m = model();
			plan_windows(burst_len, window_len, m, first_window);
		}
		catch (const std::invalid_argument &e)
		{
			throw ConfigError(e.what());
		}
	}
}

void apply_config(std::istream &is, ExperimentConfig &config)
{
	std::string line;
	int         lineno = 0;
	while (std::getline(is, line))
	{
		++lineno;
		if (const auto hash = line.find('#'); hash != std::string::npos)
			line.erase(hash);
		line = trim(line);
		if (line.empty())
			continue;
		const auto eq = line.find('=');
		if (eq == std::string::npos)
			throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
		const std::string key = trim(line.substr(0, eq));
		const std::string val = trim(line.substr(eq + 1));

		if (key == "burst-bytes")
			config.burst_len = static_cast<int>(to_int(val, key));
		else if (key == "lmin")
			config.min_len = static_cast<int>(to_int(val, key));
		else if (key == "lmax")
			config.max_len = static_cast<int>(to_int(val, key));
		else if (key == "snr")
			config.snr = parse_snr_grid(val);
		else if (key == "channel")
		{
			if (val == "awgn")
				config.channel = ChannelKind::awgn;
			else if (val == "rayleigh")
				config.channel = ChannelKind::rayleigh;
			else
				throw ConfigError("unknown channel '" + val + "'");
		}
		else if (key == "methods")
			config.methods = parse_methods(val);
		else if (key == "window-bytes")
			config.window_len = static_cast<int>(to_int(val, key));
		else if (key == "first-window-bytes")
			config.first_window = static_cast<int>(to_int(val, key));
		else if (key == "bursts")
			config.bursts = static_cast<int>(to_int(val, key));
		else if (key == "seed")
			config.seed = static_cast<std::uint64_t>(to_int(val, key));
		else if (key == "out")
			config.out = val;
		else if (key == "include-padding")
			config.include_padding = to_bool(val, key);
		else if (key == "sigma2")
			config.sigma2_override = to_double(val, key);
		else if (key == "presync-confirmations")
			config.mu.presync_confirmations = static_cast<int>(to_int(val, key));
		else if (key == "mu-policy")
		{
			if (val == "uncorrectable")
				config.mu.policy = AmbiguityPolicy::uncorrectable;
			else if (val == "validate")
				config.mu.policy = AmbiguityPolicy::validate_candidates;
			else
				throw ConfigError("unknown mu-policy '" + val + "'");
		}
		else
			throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
	}
}

FrameScore score_frames(const Burst &truth, const SyncEstimate &est, bool include_padding)
{
	std::set<std::pair<int, int>> found;
	int                           prev = 0;
	for (int b : est.boundaries)
	{
		found.emplace(prev, b);
		prev = b;
	}

	FrameScore score;
	prev                 = 0;
	const int data_count = truth.data_frame_count();
	for (int i = 0; i < truth.frame_count(); ++i)
	{
		const int end = truth.boundaries[i];
		if (i < data_count || include_padding)
		{
			++score.total;
			if (!found.contains({prev, end}))
				++score.wrong;
		}
		prev = end;
	}
	return score;
}

Rng burst_rng(std::uint64_t seed, int trial)
{
	std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
	                  static_cast<std::uint32_t>(trial), 0u};
	return Rng(seq);
}

Rng channel_rng(std::uint64_t seed, int trial, int snr_index)
{
	std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
	                  static_cast<std::uint32_t>(trial), 1u, static_cast<std::uint32_t>(snr_index)};
	return Rng(seq);
}

std::vector<EFLRPoint> run_sweep(const ExperimentConfig &config, std::ostream *log)
{
	config.validate();
	const FrameModel model  = config.model();
	const auto       snrs   = config.snr.points();
	const int        L      = config.burst_len;
	const auto       nm     = config.methods.size();
	std::optional<WindowPlan> plan;
	if (std::find(config.methods.begin(), config.methods.end(), Method::st) != config.methods.end())
		plan = plan_windows(L, config.window_len, model, config.first_window);

	using clock = std::chrono::steady_clock;
	std::vector<EFLRPoint> table;
	for (std::size_t si = 0; si < snrs.size(); ++si)
	{
		std::vector<EFLRPoint> points(nm);
		std::vector<double>    nodes(nm, 0.0);
		for (std::size_t k = 0; k < nm; ++k)
		{
			points[k].method = config.methods[k];
			points[k].snr_db = snrs[si];
		}

		for (int trial = 0; trial < config.bursts; ++trial)
		{
			Rng        brng  = burst_rng(config.seed, trial);
			const auto burst = generate_burst(brng, L, model.lengths, model.header);

			ChannelConfig ch{config.channel, snrs[si], config.sigma2_override};
			Rng           crng = channel_rng(config.seed, trial, static_cast<int>(si));
			const auto    obs  = transmit(burst.bits, ch, crng);

			std::optional<LikelihoodTable> lik;
			std::optional<Bits>            hard;

			for (std::size_t k = 0; k < nm; ++k)
			{
				const auto   t0 = clock::now();
				SyncEstimate est;
				bool         failed = false;
				try
				{
					switch (config.methods[k])
					{
					case Method::trellis:
					case Method::st:
						if (!lik)
							lik = LikelihoodTable::from_observation(obs, ch.sigma2());
						if (config.methods[k] == Method::trellis)
						{
							ComplexityCounters c;
							est = trellis_sync(*lik, model, L, &c);
							nodes[k] += double(c.nodes_visited);
						}
						else
						{
							auto r = sliding_sync(*lik, model, *plan);
							est    = std::move(r.estimate);
							nodes[k] += double(r.counters.nodes_visited);
						}
						break;
					case Method::mu:
					case Method::hard:
						if (!hard)
							hard = hard_decide(obs);
						est = config.methods[k] == Method::mu ? mu_sync(*hard, model, L, config.mu)
						                                      : hunt_sync(*hard, model, L);
						break;
					}
				}
				catch (const DecodeFailure &e)
				{
					failed = true;
					if (log)
						*log << "decode failure: method " << to_string(config.methods[k]) << " snr " << snrs[si]
						     << " trial " << trial << ": " << e.what() << '\n';
				}
				FrameScore s = score_frames(burst, est, config.include_padding);
				if (failed)
					s.wrong = s.total;
				points[k].frames_total += s.total;
				points[k].frames_wrong += s.wrong;
				points[k].trials.push_back(s);
				points[k].seconds += std::chrono::duration<double>(clock::now() - t0).count();
			}
		}
		for (std::size_t k = 0; k < nm; ++k)
		{
			points[k].mean_nodes = nodes[k] / config.bursts;
			table.push_back(std::move(points[k]));
		}
	}
	// Group rows by method, then SNR.
	std::stable_sort(table.begin(), table.end(), [&](const EFLRPoint &a, const EFLRPoint &b) {
		const auto ia = std::find(config.methods.begin(), config.methods.end(), a.method);
		const auto ib = std::find(config.methods.begin(), config.methods.end(), b.method);
		return ia < ib;
	});
	return table;
}

void emit_results(const std::vector<EFLRPoint> &table, std::ostream &os)
{
	os << "method,snr_db,frames_total,frames_wrong,eflr,mean_nodes,seconds\n";
	os << std::setprecision(17);
	for (const auto &p : table)
		os << to_string(p.method) << ',' << p.snr_db << ',' << p.frames_total << ',' << p.frames_wrong << ','
		   << p.eflr() << ',' << p.mean_nodes << ',' << p.seconds << '\n';
}

void emit_results(const std::vector<EFLRPoint> &table, const std::string &path)
{
	std::ofstream os(path);
	if (!os)
		throw IoError("cannot open '" + path + "' for writing");
	emit_results(table, os);
	os.flush();
	if (!os)
		throw IoError("write to '" + path + "' failed");
}

std::vector<EFLRPoint> parse_results(std::istream &is)
{
	std::string line;
	if (!std::getline(is, line) || trim(line) != "method,snr_db,frames_total,frames_wrong,eflr,mean_nodes,seconds")
		throw std::runtime_error("missing results header");
	std::vector<EFLRPoint> out;
	while (std::getline(is, line))
	{
		if (trim(line).empty())
			continue;
		const auto f = split(line, ',');
		if (f.size() != 7)
			throw std::runtime_error("malformed results row: " + line);
		EFLRPoint p;
		p.method       = parse_method(f[0]);
		p.snr_db       = to_double(f[1], "snr_db");
		p.frames_total = to_int(f[2], "frames_total");
		p.frames_wrong = to_int(f[3], "frames_wrong");
		p.mean_nodes   = to_double(f[5], "mean_nodes");
		p.seconds      = to_double(f[6], "seconds");
		out.push_back(std::move(p));
	}
	return out;
}

ComplexityRow complexity_row(int burst_len, const FrameModel &model, int base_len, int bursts, std::uint64_t seed)
{
	const int     lmin = model.lengths.min_len();
	const int     lmax = model.lengths.max_len();
	ComplexityRow row;
	row.burst_len           = burst_len;
	row.trellis_closed_form = closed_form_nodes(burst_len, lmin, lmax);
	row.trellis_approx      = approx_nodes(burst_len, lmin, lmax);
	row.trellis_counted     = count_trellis(TrellisGeometry{burst_len, lmin, lmax, 1}).nodes_visited;

	const auto plan = plan_windows(burst_len, base_len, model, nominal_first_window(base_len, model));
	double     sum  = 0.0;
	for (int t = 0; t < bursts; ++t)
	{
		Rng           brng  = burst_rng(seed, t);
		const auto    burst = generate_burst(brng, burst_len, model.lengths, model.header);
		ChannelConfig ch{ChannelKind::awgn, 0.0, 1e-3};
		Rng           crng = channel_rng(seed, t, 0);
		const auto    lik  = LikelihoodTable::from_observation(transmit(burst.bits, ch, crng), ch.sigma2());
		sum += double(sliding_sync(lik, model, plan).counters.nodes_visited);
	}
	row.st_measured = sum / bursts;
	return row;
}

} // namespace framesync
