# Ramanujan integral verification engine
