{"vertices": ["a","b","c","d"],
 "cubes": [
  {"dim": 2, "verts": ["a","b","c","d"]},
  {"dim": 1, "verts": ["a","c"]},
  {"dim": 1, "verts": ["b","d"]},
  {"dim": 1, "verts": ["a","b"]},
  {"dim": 1, "verts": ["c","d"]}
 ]}
