""" Console scripts: model, pauli, vqite, amp, zne."""
