{"vertices": ["a", "b", "c", "d"], "cubes": [{"dim": 2, "verts": ["a", "b", "c", "d"]}]}
