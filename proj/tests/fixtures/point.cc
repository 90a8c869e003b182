{"vertices": ["v"],
 "cubes": [
 ]}
