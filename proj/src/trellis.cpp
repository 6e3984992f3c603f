#include "framesync/trellis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace framesync
{

double log_add(double a, double b)
{
	if (a == neg_inf)
		return b;
	if (b == neg_inf)
		return a;
	const double hi = std::max(a, b);
	return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

namespace
{

double safe_log(double x) { return x > 0.0 ? std::log(x) : neg_inf; }

} // namespace

// ---------------------------------------------------------------------------

double marginalize_payload(const Eigen::Ref<const Eigen::ArrayX2d> &lik)
{
	double p = 1.0;
	for (Eigen::Index i = 0; i < lik.rows(); ++i)
		p *= 0.5 * (lik(i, 0) + lik(i, 1));
	return p;
}

double marginalize_other_crc(const HeaderSpec &spec, std::span<const Bit> known_prefix,
                             const Eigen::Ref<const Eigen::ArrayX2d> &other_lik,
                             const Eigen::Ref<const Eigen::ArrayX2d> &crc_lik)
{
	if (static_cast<int>(known_prefix.size()) != spec.other.offset)
		throw std::domain_error("known prefix must cover the constant and length fields");
	if (other_lik.rows() != spec.other.width || crc_lik.rows() != spec.hec.width)
		throw std::domain_error("likelihood spans do not match the header layout");

	const int           width = spec.hec.width;
	const std::uint32_t size  = 1u << width;

	std::vector<double> reg(size, 0.0), next(size, 0.0);
	reg[crc_remainder(known_prefix, spec.generator, width)] = 1.0;

	for (Eigen::Index i = 0; i < other_lik.rows(); ++i)
	{
		std::fill(next.begin(), next.end(), 0.0);
		const double w0 = 0.5 * other_lik(i, 0);
		const double w1 = 0.5 * other_lik(i, 1);
		for (std::uint32_t r = 0; r < size; ++r)
		{
			if (reg[r] == 0.0)
				continue;
			next[crc_step(r, 0, spec.generator, width)] += w0 * reg[r];
			next[crc_step(r, 1, spec.generator, width)] += w1 * reg[r];
		}
		reg.swap(next);
	}

	double total = 0.0;
	for (std::uint32_t r = 0; r < size; ++r)
	{
		if (reg[r] == 0.0)
			continue;
		double pc = 1.0;
		for (int j = 0; j < width; ++j)
			pc *= crc_lik(j, (r >> (width - 1 - j)) & 1u);
		total += reg[r] * pc;
	}
	return total;
}

// ---------------------------------------------------------------------------

HeaderScorer::HeaderScorer(const FrameModel &model, const LikelihoodTable &table)
    : model_(&model), table_(&table)
{
	const auto &spec = model.header;
	const auto &dist = model.lengths;
	if (spec.hec.width > 16)
		throw std::invalid_argument("header scoring supports HEC widths up to 16 bits");

	span_            = dist.max_len() - dist.min_len() + 1;
	const auto units = static_cast<std::size_t>(table.size() / dist.granularity());
	cache_.assign(units * span_, neg_inf);
	filled_.assign(units, 0);

	const std::uint32_t len_mask = spec.length.width >= 32 ? 0xFFFFFFFFu : ((1u << spec.length.width) - 1u);
	Bits                prefix(spec.other.offset);
	std::copy(spec.constant_value.begin(), spec.constant_value.end(), prefix.begin());
	for (int len = dist.min_len(); len <= dist.max_len(); ++len)
	{
		const std::uint32_t u = static_cast<std::uint32_t>(len) & len_mask;
		put_uint(std::span(prefix).subspan(spec.length.offset, spec.length.width), u, spec.length.width);
		std::uint32_t reg = crc_remainder(prefix, spec.generator, spec.hec.width);
		for (int i = 0; i < spec.other.width; ++i)
			reg = crc_step(reg, 0, spec.generator, spec.hec.width);
		len_register_.push_back(reg);
		len_field_.push_back(u);
	}

	const std::size_t states = std::size_t{1} << spec.hec.width;
	reg_.resize(states);
	next_.resize(states);
	step_.resize(2 * states);
	for (std::uint32_t r = 0; r < states; ++r)
		for (Bit b : {Bit{0}, Bit{1}})
			step_[2 * r + b] = crc_step(r, b, spec.generator, spec.hec.width);
}

double HeaderScorer::log_header(int start, int len)
{
	const auto &dist = model_->lengths;
	if (len < dist.min_len() || len > dist.max_len() || start < 0 ||
	    static_cast<std::size_t>(start) >= filled_.size())
		return neg_inf;
	if (!filled_[start])
		fill(start);
	return cache_[static_cast<std::size_t>(start) * span_ + (len - dist.min_len())];
}

void HeaderScorer::fill(int start)
{
	filled_[start]   = 1;
	const auto &spec = model_->header;
	const auto &tab  = *table_;
	const auto  base = static_cast<Eigen::Index>(start) * model_->granularity();
	if (base + spec.header_bits() > tab.size())
		return; // header runs past the observation: stays -inf
	++evaluated_;

	double log_k = 0.0;
	for (int i = 0; i < spec.constant.width; ++i)
		log_k += tab.log_prob(base + spec.constant.offset + i, spec.constant_value[i]);

	// Distribution of the o-only register contribution.
	const int           width  = spec.hec.width;
	const std::uint32_t states = 1u << width;
	std::fill(reg_.begin(), reg_.end(), 0.0);
	reg_[0] = 1.0;
	for (int i = 0; i < spec.other.width; ++i)
	{
		std::fill(next_.begin(), next_.end(), 0.0);
		const double w0 = 0.5 * tab.prob(base + spec.other.offset + i, 0);
		const double w1 = 0.5 * tab.prob(base + spec.other.offset + i, 1);
		for (std::uint32_t r = 0; r < states; ++r)
		{
			const double m = reg_[r];
			next_[step_[2 * r]] += w0 * m;
			next_[step_[2 * r + 1]] += w1 * m;
		}
		reg_.swap(next_);
	}

	// G(x) = sum_r reg(r) P(y_c | c = r ^ x). P(y_c | c) factorises over the CRC bits, so the
	// xor-correlation is one 2x2 butterfly per bit with non-negative weights.
	for (int j = 0; j < width; ++j)
	{
		const double        q0   = tab.prob(base + spec.hec.offset + j, 0);
		const double        q1   = tab.prob(base + spec.hec.offset + j, 1);
		const std::uint32_t mask = 1u << (width - 1 - j);
		for (std::uint32_t x = 0; x < states; ++x)
		{
			if (x & mask)
				continue;
			const double a = reg_[x], b = reg_[x | mask];
			reg_[x]        = q0 * a + q1 * b;
			reg_[x | mask] = q1 * a + q0 * b;
		}
	}

	// log P(y_u | u) per LEN field bit value.
	const int lw = spec.length.width;
	double   *out = &cache_[static_cast<std::size_t>(start) * span_];
	for (int k = 0; k < span_; ++k)
	{
		double log_u = 0.0;
		for (int i = 0; i < lw; ++i)
			log_u += tab.log_prob(base + spec.length.offset + i,
			                      static_cast<Bit>((len_field_[k] >> (lw - 1 - i)) & 1u));
		out[k] = log_k + log_u + safe_log(reg_[len_register_[k]]);
	}
}

// ---------------------------------------------------------------------------

BranchMetrics::BranchMetrics(const FrameModel &model, const LikelihoodTable &table)
    : model_(&model), table_(&table), scorer_(model, table)
{
}

double BranchMetrics::log_payload(int bits) const { return -static_cast<double>(bits) * std::numbers::ln2; }

double BranchMetrics::log_gamma_data(int prev, int next)
{
	const int  len = next - prev;
	const auto p   = model_->lengths.pmf(len);
	if (p <= 0.0)
		return neg_inf;
	return std::log(p) + scorer_.log_header(prev, len) +
	       log_payload(len * model_->granularity() - model_->header.header_bits());
}

std::pair<double, double> BranchMetrics::log_gamma_last_terms(int prev, int burst_end)
{
	const auto &dist = model_->lengths;
	const int   gap  = burst_end - prev;
	if (gap < 1 || gap > dist.max_len())
		return {neg_inf, neg_inf};

	const double pad  = padding_prob(prev, burst_end, dist);
	double       data = neg_inf;
	if (gap >= dist.min_len())
	{
		const double renorm = dist.pmf(gap) / dist.mass(dist.min_len(), gap);
		data = safe_log((1.0 - pad) * renorm) + scorer_.log_header(prev, gap) +
		       log_payload(gap * model_->granularity() - model_->header.header_bits());
	}
	double padding = neg_inf;
	if (pad > 0.0)
	{
		const int g = model_->granularity();
		padding     = std::log(pad) + table_->log_ones(static_cast<Eigen::Index>(prev) * g,
		                                                static_cast<Eigen::Index>(burst_end) * g);
	}
	return {data, padding};
}

double BranchMetrics::log_gamma_last(int prev, int burst_end)
{
	const auto [data, padding] = log_gamma_last_terms(prev, burst_end);
	return log_add(data, padding);
}

double BranchMetrics::log_gamma_truncated(int prev, int edge)
{
	const auto &dist = model_->lengths;
	const int   g    = model_->granularity();
	const int   t    = edge - prev;
	const int   hb   = model_->header.header_bits();
	if (t < 1 || t > dist.max_len() || t * g < hb)
		return neg_inf;

	double sum = neg_inf;
	for (int len = std::max(t, dist.min_len()); len <= dist.max_len(); ++len)
		sum = log_add(sum, std::log(dist.pmf(len)) + scorer_.log_header(prev, len));
	return safe_log(transition_prob(prev, edge, edge, dist)) + log_payload(t * g - hb) + sum;
}

double BranchMetrics::log_gamma_header_truncated(int prev, int edge)
{
	const auto &dist = model_->lengths;
	const int   g    = model_->granularity();
	const int   t    = edge - prev;
	if (t < 1 || t > dist.max_len() || t * g >= model_->header.header_bits())
		return neg_inf;
	return safe_log(transition_prob(prev, edge, edge, dist)) + log_payload(t * g);
}

double BranchMetrics::log_gamma_edge(int prev, int edge)
{
	if ((edge - prev) * model_->granularity() >= model_->header.header_bits())
		return log_gamma_truncated(prev, edge);
	return log_gamma_header_truncated(prev, edge);
}

// ---------------------------------------------------------------------------

int TrellisGeometry::lo(int n) const
{
	return static_cast<int>(std::min<std::int64_t>(std::int64_t{n} * min_len, end));
}

int TrellisGeometry::hi(int n) const
{
	return static_cast<int>(std::min<std::int64_t>(std::int64_t{n} * max_len + seed_width - 1, end));
}

int TrellisGeometry::last_stage() const { return (end + min_len - 1) / min_len; }

int TrellisGeometry::first_final_stage() const
{
	const int need = end - seed_width + 1;
	return std::max(1, (need + max_len - 1) / max_len);
}

namespace
{

// Predecessor range of (n, l) in stage n-1; empty when first > last.
struct Range
{
	int first;
	int last;
	int size() const { return std::max(0, last - first + 1); }
};

Range predecessors(const TrellisGeometry &g, int n, int l)
{
	if (l < g.end)
		return {std::max(g.lo(n - 1), l - g.max_len), std::min(g.hi(n - 1), l - g.min_len)};
	return {std::max(g.lo(n - 1), g.end - g.max_len), std::min(g.hi(n - 1), g.end - 1)};
}

} // namespace

ComplexityCounters count_trellis(const TrellisGeometry &geometry)
{
	ComplexityCounters c;
	const int          last = geometry.last_stage();
	for (int n = 0; n <= last; ++n)
	{
		c.nodes_visited += geometry.hi(n) - geometry.lo(n);
		if (n == 0)
			continue;
		for (int l = geometry.lo(n); l <= geometry.hi(n); ++l)
			c.transitions_evaluated += predecessors(geometry, n, l).size();
	}
	return c;
}

double closed_form_nodes(int burst_len, int min_len, int max_len)
{
	const int n_min = (burst_len + max_len - 1) / max_len;
	const int n_max = (burst_len + min_len - 1) / min_len;
	double    total = 0.0;
	for (int n = 0; n <= n_min - 1; ++n)
		total += static_cast<double>(n) * (max_len - min_len);
	for (int n = n_min; n <= n_max; ++n)
		total += static_cast<double>(burst_len) - static_cast<double>(n) * min_len;
	return total;
}

double approx_nodes(double burst_len, int min_len, int max_len)
{
	return burst_len * burst_len / 2.0 * (static_cast<double>(max_len - min_len) / (double(max_len) * min_len));
}

// ---------------------------------------------------------------------------

double TrellisPosterior::log_alpha(int n, int l) const
{
	if (n < 0 || n >= stages() || l < lo_[n] || l > hi_[n])
		return neg_inf;
	return alpha_[index(n, l)];
}

double TrellisPosterior::log_beta(int n, int l) const
{
	if (n < 0 || n >= stages() || l < lo_[n] || l > hi_[n])
		return neg_inf;
	return beta_[index(n, l)];
}

double TrellisPosterior::log_joint(int n, int l) const
{
	const double a = log_alpha(n, l);
	const double b = log_beta(n, l);
	if (a == neg_inf || b == neg_inf)
		return neg_inf;
	return a + alpha_scale_[n] + b + beta_scale_[n];
}

double TrellisPosterior::posterior(int n, int l) const
{
	const double lj = log_joint(n, l);
	return lj == neg_inf ? 0.0 : std::exp(lj - log_evidence_);
}

namespace
{

// exp(x) for x <= 0, with terms below e^-60 (negligible next to the leading 1) dropped.
inline double scaled_exp(double x) { return x < -60.0 ? 0.0 : std::exp(x); }

// Shifts log `values` in place so that they sum to one; returns the log of the old sum.
double normalise_stage(std::vector<double> &values)
{
	double hi = neg_inf;
	for (double v : values)
		hi = std::max(hi, v);
	if (hi == neg_inf)
		return neg_inf;
	double sum = 0.0;
	for (double v : values)
		sum += std::exp(v - hi);
	const double log_sum = hi + std::log(sum);
	for (double &v : values)
		v -= log_sum;
	return log_sum;
}

} // namespace

TrellisPosterior forward_backward(BranchMetrics &metrics, const TrellisProblem &problem)
{
	const auto &dist = metrics.model().lengths;
	const int   end  = problem.end;
	const int   dmin = dist.min_len();
	const int   dmax = dist.max_len();
	const int   span = dmax - dmin + 1;

	if (end < 1)
		throw std::invalid_argument("trellis end must be positive");
	if (problem.seed.empty() || static_cast<int>(problem.seed.size()) > end)
		throw std::invalid_argument("alpha seed must be non-empty and fit in the trellis");

	TrellisPosterior post;
	post.origin_   = problem.origin;
	post.rule_     = problem.rule;
	post.geometry_ = {end, dmin, dmax, static_cast<int>(problem.seed.size())};
	const auto &geo = post.geometry_;

	const int last = geo.last_stage();
	post.lo_.resize(last + 1);
	post.hi_.resize(last + 1);
	post.offset_.resize(last + 2);
	post.offset_[0] = 0;
	std::vector<char> is_node(end + 1, 0);
	for (int n = 0; n <= last; ++n)
	{
		post.lo_[n]         = geo.lo(n);
		post.hi_[n]         = geo.hi(n);
		post.offset_[n + 1] = post.offset_[n] + static_cast<std::size_t>(post.hi_[n] - post.lo_[n] + 1);
		for (int l = post.lo_[n]; l <= post.hi_[n]; ++l)
			is_node[l] = 1;
	}
	post.first_final_ = geo.first_final_stage();
	post.last_final_  = last;

	// Branch metric caches: data transitions indexed by target, edge transitions by source.
	std::vector<double> data_gamma(static_cast<std::size_t>(end) * span, neg_inf);
	for (int l = dmin; l < end; ++l)
	{
		if (!is_node[l])
			continue;
		for (int d = dmin; d <= std::min(dmax, l); ++d)
			if (is_node[l - d])
				data_gamma[static_cast<std::size_t>(l) * span + (d - dmin)] =
				    metrics.log_gamma_data(problem.origin + l - d, problem.origin + l);
	}
	const int           edge_first = std::max(0, end - dmax);
	std::vector<double> end_gamma(end - edge_first, neg_inf);
	for (int p = edge_first; p < end; ++p)
	{
		if (!is_node[p])
			continue;
		end_gamma[p - edge_first] = problem.rule == EndRule::burst_end
		                                ? metrics.log_gamma_last(problem.origin + p, problem.origin + end)
		                                : metrics.log_gamma_edge(problem.origin + p, problem.origin + end);
	}
	auto gamma = [&](int prev, int l) {
		return l < end ? data_gamma[static_cast<std::size_t>(l) * span + (l - prev - dmin)]
		               : end_gamma[prev - edge_first];
	};

	post.alpha_.assign(post.offset_.back(), neg_inf);
	post.beta_.assign(post.offset_.back(), neg_inf);
	post.alpha_scale_.assign(last + 1, 0.0);
	post.beta_scale_.assign(last + 1, 0.0);

	// Forward.
	{
		double seed_sum = 0.0;
		for (double s : problem.seed)
		{
			if (!(s >= 0.0))
				throw std::invalid_argument("alpha seed must be non-negative");
			seed_sum += s;
		}
		if (!(seed_sum > 0.0))
			throw std::invalid_argument("alpha seed has no mass");
		for (int l = 0; l <= post.hi_[0]; ++l)
			post.alpha_[post.index(0, l)] = safe_log(problem.seed[l] / seed_sum);
		post.counters_.nodes_visited += post.hi_[0] - post.lo_[0];
	}

	std::vector<double> log_prev, stage;
	for (int n = 1; n <= last; ++n)
	{
		const int plo = post.lo_[n - 1], phi = post.hi_[n - 1];
		log_prev.resize(phi - plo + 1);
		for (int l = plo; l <= phi; ++l)
			log_prev[l - plo] = post.alpha_[post.index(n - 1, l)];

		stage.assign(post.hi_[n] - post.lo_[n] + 1, neg_inf);
		for (int l = post.lo_[n]; l <= post.hi_[n]; ++l)
		{
			const Range r = predecessors(geo, n, l);
			post.counters_.transitions_evaluated += r.size();
			double hi = neg_inf;
			for (int p = r.first; p <= r.last; ++p)
				hi = std::max(hi, log_prev[p - plo] + gamma(p, l));
			if (hi == neg_inf)
				continue;
			double sum = 0.0;
			for (int p = r.first; p <= r.last; ++p)
				sum += scaled_exp(log_prev[p - plo] + gamma(p, l) - hi);
			stage[l - post.lo_[n]] = hi + std::log(sum);
		}
		post.counters_.nodes_visited += post.hi_[n] - post.lo_[n];

		// A stage can be empty when no segmentation uses that many frames; it keeps the
		// running scale and stays zero.
		const double c = normalise_stage(stage);
		if (c == neg_inf)
		{
			post.alpha_scale_[n] = post.alpha_scale_[n - 1];
			continue;
		}
		std::copy(stage.begin(), stage.end(), post.alpha_.begin() + post.offset_[n]);
		post.alpha_scale_[n] = post.alpha_scale_[n - 1] + c;
	}

	// Backward. Allowed final states (n, end) are equally likely.
	const double log_final = -std::log(static_cast<double>(post.last_final_ - post.first_final_ + 1));
	std::vector<double> log_next;
	double              next_scale = 0.0;
	for (int n = last; n >= 0; --n)
	{
		stage.assign(post.hi_[n] - post.lo_[n] + 1, neg_inf);
		const bool final_stage = n >= post.first_final_ && n <= post.last_final_;
		for (int l = post.lo_[n]; l <= post.hi_[n]; ++l)
		{
			double &out = stage[l - post.lo_[n]];
			if (l == end)
			{
				out = final_stage ? log_final - next_scale : neg_inf;
				continue;
			}
			if (n == last)
				continue;
			const int nlo = post.lo_[n + 1], nhi = post.hi_[n + 1];
			const int first = std::max(nlo, l + dmin);
			const int lastd = std::min({nhi, l + dmax, end - 1});
			const bool to_end = nhi == end && end - l <= dmax && nlo <= end;

			double hi = neg_inf;
			for (int s = first; s <= lastd; ++s)
				hi = std::max(hi, log_next[s - nlo] + gamma(l, s));
			if (to_end)
				hi = std::max(hi, log_next[end - nlo] + gamma(l, end));
			if (hi == neg_inf)
				continue;
			double sum = 0.0;
			for (int s = first; s <= lastd; ++s)
				sum += scaled_exp(log_next[s - nlo] + gamma(l, s) - hi);
			if (to_end)
				sum += std::exp(log_next[end - nlo] + gamma(l, end) - hi);
			out = hi + std::log(sum);
		}
		double c = normalise_stage(stage);
		if (c == neg_inf)
		{
			c = 0.0;
		}
		else
			std::copy(stage.begin(), stage.end(), post.beta_.begin() + post.offset_[n]);
		post.beta_scale_[n] = next_scale + c;
		next_scale          = post.beta_scale_[n];

		log_next.resize(stage.size());
		for (std::size_t i = 0; i < stage.size(); ++i)
			log_next[i] = stage[i];
	}

	double evidence = neg_inf;
	for (int n = post.first_final_; n <= post.last_final_; ++n)
	{
		const double a = post.log_alpha(n, end);
		if (a != neg_inf)
			evidence = log_add(evidence, a + post.alpha_scale_[n] + log_final);
	}
	if (evidence == neg_inf)
		throw DecodeFailure("no path reaches the end of the trellis");
	post.log_evidence_ = evidence;
	return post;
}

TrellisPosterior forward_backward(const LikelihoodTable &table, const FrameModel &model, int burst_len)
{
	if (table.size() < static_cast<Eigen::Index>(burst_len) * model.granularity())
		throw std::invalid_argument("likelihood table shorter than the burst");
	BranchMetrics metrics(model, table);
	return forward_backward(metrics, TrellisProblem{0, burst_len, EndRule::burst_end, {1.0}});
}

// ---------------------------------------------------------------------------

namespace
{

// Log-probabilities within 1e-12 of each other count as a tie, which the earlier index wins.
bool beats(double candidate, double incumbent)
{
	if (incumbent == neg_inf)
		return candidate > neg_inf;
	return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

} // namespace

SyncEstimate estimate(const TrellisPosterior &posterior, BranchMetrics *metrics)
{
	SyncEstimate est;
	const int    end = posterior.end();

	double best = neg_inf;
	est.n_hat   = posterior.first_final_stage();
	for (int n = posterior.first_final_stage(); n <= posterior.last_final_stage(); ++n)
	{
		const double v = posterior.log_joint(n, end);
		if (beats(v, best))
		{
			best      = v;
			est.n_hat = n;
		}
	}

	auto argmax_stage = [&](int n) {
		int    arg = posterior.lo(n);
		double top = neg_inf;
		for (int l = posterior.lo(n); l <= posterior.hi(n); ++l)
		{
			const double v = posterior.log_joint(n, l);
			if (beats(v, top))
			{
				top = v;
				arg = l;
			}
		}
		return arg;
	};

	est.start = argmax_stage(0);
	int prev  = est.start;
	for (int n = 1; n <= est.n_hat; ++n)
	{
		const int b = n == est.n_hat ? end : argmax_stage(n);
		est.boundaries.push_back(b);
		est.lengths.push_back(b - prev);
		prev = b;
	}

	if (posterior.rule() == EndRule::burst_end && !est.boundaries.empty())
	{
		const int before = est.boundaries.size() >= 2 ? est.boundaries[est.boundaries.size() - 2] : est.start;
		if (metrics != nullptr)
		{
			const int gap = end - before;
			if (gap < metrics->model().lengths.min_len())
				est.is_padding_last = true;
			else if (gap >= 1 && gap <= metrics->model().lengths.max_len())
			{
				const auto [data, padding] =
				    metrics->log_gamma_last_terms(posterior.origin() + before, posterior.origin() + end);
				est.is_padding_last = padding > data;
			}
		}
	}
	return est;
}

SyncEstimate trellis_sync(const LikelihoodTable &table, const FrameModel &model, int burst_len,
                          ComplexityCounters *counters)
{
	if (table.size() < static_cast<Eigen::Index>(burst_len) * model.granularity())
		throw std::invalid_argument("likelihood table shorter than the burst");
	BranchMetrics metrics(model, table);
	const auto    post = forward_backward(metrics, TrellisProblem{0, burst_len, EndRule::burst_end, {1.0}});
	if (counters != nullptr)
		*counters += post.counters();
	return estimate(post, &metrics);
}

void write_posterior(std::ostream &os, const TrellisPosterior &posterior)
{
	for (int n = 0; n < posterior.stages(); ++n)
		for (int l = posterior.lo(n); l <= posterior.hi(n); ++l)
		{
			const double p = posterior.posterior(n, l);
			if (p > 0.0)
				os << n << ' ' << posterior.origin() + l << ' ' << p << '\n';
		}
}

} // namespace framesync
