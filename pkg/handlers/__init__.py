"""Command-line subcommands, one module per subcommand"""
