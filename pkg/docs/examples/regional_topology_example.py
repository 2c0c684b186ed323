from astopo import ModelParams, generate, read_region_file, write_edge_list, find_dense_cores

# Use the bundled table of regional shares
table = read_region_file()

# Half of the new nodes only attach inside their own region
params = ModelParams(model='geodined', n=15000, m=2.11, p=0.07, alpha=0.5,
                     region_weights=table.weights, region_names=table.names, seed=1)
graph, trace = generate(params)

# Edges that found no candidate inside the region fell back to a global attachment
fallbacks = [edge for step in trace.steps for edge in step.edges if edge.scope.value.endswith('fallback')]
print('Edges with a fallback: ' + str(len(fallbacks)))
print('Skipped duplicate edges: ' + str(trace.skipped))

# Regional cores are cores whose members all share a region
cores = find_dense_cores(graph)
for core in cores.secondary:
    print(str(core.size) + ' nodes, regional: ' + str(core.is_regional))

# Save the graph together with the parameters that produced it
write_edge_list(graph, 'regional.el', params)
