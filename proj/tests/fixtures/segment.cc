{"vertices": ["a","b"],
 "cubes": [
  {"dim": 1, "verts": ["a","b"]}
 ]}
