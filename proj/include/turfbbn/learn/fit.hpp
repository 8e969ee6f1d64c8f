#pragma once

#include "turfbbn/core/network.hpp"
#include "turfbbn/learn/dataset.hpp"

namespace turfbbn {

/// Additively smoothed maximum-likelihood CPTs:
///   P(child = k | parents = j) = (N_jk + alpha) / (N_j + alpha * r)
/// A parent combination never observed with alpha = 0 gets a uniform row.
/// CPT parent order follows DAG declaration order. Throws InvalidArgument
/// for a negative alpha, UnknownVariable for DAG nodes absent from the data.
Network fit_cpts(const DiscreteDataset& data, const Dag& dag, double alpha);

}  // namespace turfbbn
