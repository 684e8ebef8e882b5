import hypothesis

# Sampled-path and finite-difference properties do real numerical work per
# example; the wall-clock deadline only adds flakiness on loaded machines.
hypothesis.settings.register_profile(
    "sl2flow", deadline=None, max_examples=60, derandomize=True
)
hypothesis.settings.load_profile("sl2flow")
