{"vertices": ["v0","v1","v2","v3"],
 "cubes": [
  {"dim": 1, "verts": ["v0","v1"]},
  {"dim": 1, "verts": ["v1","v2"]},
  {"dim": 1, "verts": ["v2","v3"]},
  {"dim": 1, "verts": ["v3","v0"]}
 ]}
