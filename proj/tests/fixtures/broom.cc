{"vertices": ["o","a1","a2","a3","b","c"],
 "cubes": [
  {"dim": 1, "verts": ["o","a1"]},
  {"dim": 1, "verts": ["a1","a2"]},
  {"dim": 1, "verts": ["a2","a3"]},
  {"dim": 1, "verts": ["a3","b"]},
  {"dim": 1, "verts": ["a3","c"]}
 ]}
