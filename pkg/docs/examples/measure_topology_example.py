from astopo import ModelParams, generate, ccdf, fit_power_law, count_leaves, symmetric_fraction, find_dense_cores, \
    path_inflation, predict

# Grow a directed topology with 15000 autonomous systems
params = ModelParams(model='dined', n=15000, m=2.11, p=0.07, seed=1)
graph, _ = generate(params)

# Compare the fitted degree exponent against the prediction
fit = fit_power_law(ccdf(graph))
print('Measured eta: ' + str(fit.eta))
print('Predicted eta: ' + str(predict(params.m, params.p).eta))

# Leaves have a single link, symmetric edges are peering links
leaf_count, leaf_fraction = count_leaves(graph)
print('Leaves: ' + str(leaf_count) + ' (' + str(leaf_fraction) + ')')
print('Symmetric fraction: ' + str(symmetric_fraction(graph)))

# List the dense cores, largest first
for core in find_dense_cores(graph).cores:
    print('Core of ' + str(core.size) + ' nodes with density ' + str(core.density))

# Sample 200 pairs per tier and report how many valley-free routes are longer than the shortest path
report = path_inflation(graph, sample_size=200, rng=0)
for tier, counters in report.tiers.items():
    print(tier.name + ': ' + str(counters.percentage) + '% inflated')
