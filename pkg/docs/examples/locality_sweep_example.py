import json
import logging

from astopo import ModelParams, read_region_file
from astopo.ensemble import AnalysisOptions, EnsembleRunner

logging.basicConfig(level=logging.INFO)

# Base parameters for every point of the sweep
table = read_region_file()
params = ModelParams(model='geodined', n=15000, m=2.11, p=0.07,
                     region_weights=table.weights, region_names=table.names, seed=1)

# Run ten graphs per point on four processes
runner = EnsembleRunner(workers=4)
options = AnalysisOptions(['symmetric', 'cores'])
rows = runner.sweep(params, alphas=[0, 0.25, 0.5, 0.75, 1], ps=[0.07, 0], runs=10, options=options)

# Write the mean number of secondary cores for each point
with open('sweep.json', 'w') as sweep_file:
    json.dump([{'p': row['p'], 'alpha': row['alpha'], 'cores': row['secondary_core_count']['mean']} for row in rows],
              sweep_file, indent=2)
