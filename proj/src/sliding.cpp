#include "framesync/sliding.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace framesync
{

int WindowPlan::window_count() const
{
	if (burst_len <= first_len)
		return 1;
	return 1 + (burst_len - first_len + base_len - 1) / base_len;
}

int WindowPlan::right_edge(int m) const
{
	const std::int64_t edge = std::int64_t{first_len} + std::int64_t{m} * base_len;
	return static_cast<int>(std::min<std::int64_t>(edge, burst_len));
}

WindowPlan plan_windows(int burst_len, int base_len, const FrameModel &model, std::optional<int> first_len)
{
	WindowPlan plan;
	plan.burst_len   = burst_len;
	plan.base_len    = base_len;
	plan.first_len   = first_len.value_or(base_len);
	plan.min_window  = model.header_units() + 2 * model.lengths.max_len();
	plan.min_overlap = model.header_units() + model.lengths.max_len();
	plan.max_overlap = plan.min_window;
	if (burst_len < 1)
		throw std::invalid_argument("burst length must be positive");
	if (base_len < plan.min_window)
		throw std::invalid_argument("window base length must be at least header + 2 max_len (" +
		                            std::to_string(plan.min_window) + ")");
	if (plan.first_len < plan.min_window)
		throw std::invalid_argument("first window must be at least header + 2 max_len");
	return plan;
}

int nominal_first_window(int base_len, const FrameModel &model)
{
	return base_len + model.header_units() + (3 * model.lengths.max_len()) / 2;
}

SeedResult seed_alpha(const TrellisPosterior &prev, int n_reliable, int shift, int max_len)
{
	SeedResult          out;
	std::vector<double> logs(max_len);
	double              top = neg_inf;
	for (int l = 0; l < max_len; ++l)
	{
		logs[l] = prev.log_alpha(n_reliable, shift + l);
		top     = std::max(top, logs[l]);
	}
	if (top == neg_inf)
	{
		out.seed     = {1.0};
		out.fallback = true;
		return out;
	}
	out.seed.resize(max_len);
	double sum = 0.0;
	for (int l = 0; l < max_len; ++l)
		sum += out.seed[l] = std::exp(logs[l] - top);
	for (double &v : out.seed)
		v /= sum;
	while (out.seed.size() > 1 && out.seed.back() == 0.0)
		out.seed.pop_back();
	return out;
}

ReliablePrefix reliable_prefix(const SyncEstimate &est, int window_len, const FrameModel &model, bool final_window)
{
	ReliablePrefix out;
	if (final_window)
	{
		out.committed  = est.boundaries;
		out.n_reliable = static_cast<int>(est.boundaries.size());
		return out;
	}
	const int cutoff = window_len - model.lengths.max_len() - model.header_units();
	int       prev   = est.start;
	for (int b : est.boundaries)
	{
		if (b > cutoff || b <= prev)
			break;
		out.committed.push_back(b);
		prev = b;
	}
	out.n_reliable = static_cast<int>(out.committed.size());
	return out;
}

SlidingResult sliding_sync(const LikelihoodTable &table, const FrameModel &model, const WindowPlan &plan)
{
	const int L = plan.burst_len;
	if (table.size() < static_cast<Eigen::Index>(L) * model.granularity())
		throw std::invalid_argument("likelihood table shorter than the burst");

	BranchMetrics metrics(model, table);
	SlidingResult result;

	int                 eps  = 0;
	std::vector<double> seed = {1.0};
	bool                seed_fallback = false;
	int                 prev_start = 0;
	for (int m = 0;; ++m)
	{
		int edge = plan.right_edge(m);
		if (edge < L && edge - eps < plan.min_window)
			edge = std::min(L, eps + plan.min_window);
		const bool final_window = edge >= L;
		const int  size         = (final_window ? L : edge) - eps;

		if (static_cast<int>(seed.size()) > size)
			seed.resize(size);

		TrellisProblem problem{eps, size, final_window ? EndRule::burst_end : EndRule::window_edge, seed};
		const auto     post = forward_backward(metrics, problem);
		const auto     est  = estimate(post, &metrics);
		const auto     pre  = reliable_prefix(est, size, model, final_window);

		WindowDiagnostics diag;
		diag.index         = m;
		diag.start         = eps;
		diag.size          = size;
		diag.n_hat         = est.n_hat;
		diag.n_reliable    = pre.n_reliable;
		diag.seed_width    = static_cast<int>(seed.size());
		diag.seed_fallback = seed_fallback;
		diag.counters      = post.counters();
		for (int b : pre.committed)
			diag.committed.push_back(eps + b);
		result.counters += post.counters();

		if (m == 0)
			prev_start = est.start;
		for (int b : diag.committed)
			result.estimate.boundaries.push_back(b);

		if (final_window)
		{
			result.estimate.is_padding_last = est.is_padding_last;
			result.windows.push_back(std::move(diag));
			break;
		}

		int next_eps;
		if (pre.n_reliable > 0)
		{
			next_eps          = eps + pre.committed.back();
			const auto seeded = seed_alpha(post, pre.n_reliable, pre.committed.back(), model.lengths.max_len());
			seed              = seeded.seed;
			seed_fallback     = seeded.fallback;
		}
		else
		{
			// Nothing reliable: move on without committing and restart from a point mass.
			diag.forced_progress = true;
			next_eps             = eps + size - plan.min_window;
			seed                 = {1.0};
			seed_fallback        = true;
		}
		diag.overlap = eps + size - next_eps;
		result.windows.push_back(std::move(diag));
		eps = next_eps;
	}

	auto &est  = result.estimate;
	est.start  = prev_start;
	est.n_hat  = static_cast<int>(est.boundaries.size());
	int before = est.start;
	for (int b : est.boundaries)
	{
		est.lengths.push_back(b - before);
		before = b;
	}
	return result;
}

void write_window_log(std::ostream &os, const std::vector<WindowDiagnostics> &windows)
{
	for (const auto &w : windows)
	{
		os << "window " << w.index << " start " << w.start << " size " << w.size << " overlap " << w.overlap
		   << " n_hat " << w.n_hat << " n_reliable " << w.n_reliable << " seed_width " << w.seed_width
		   << " nodes " << w.counters.nodes_visited;
		if (w.forced_progress)
			os << " forced_progress";
		if (w.seed_fallback)
			os << " seed_fallback";
		os << " committed";
		for (int b : w.committed)
			os << ' ' << b;
		os << '\n';
	}
}

} // namespace framesync
